#include "aptfwm/detection.hpp"

#include <cmath>

namespace aptfwm {

void DetectorPair::validate() const {
    if (!(eta_p > 0.0) || eta_p > 1.0 || !(eta_s > 0.0) || eta_s > 1.0) {
        throw ConfigError("DetectorPair: efficiencies must lie in (0, 1]");
    }
    if (dark_variance < 0.0) {
        throw ConfigError("DetectorPair: dark variance must be non-negative");
    }
}

MomentState apply_detectors(const MomentState& moments, const DetectorPair& det) {
    det.validate();
    const double sp = std::sqrt(det.eta_p);
    const double ss = std::sqrt(det.eta_s);
    const Matrix2d e = (Matrix2d() << sp, 0, 0, ss).finished();

    MomentState out;
    out.mean_p = sp * moments.mean_p;
    out.mean_s_dag = ss * moments.mean_s_dag;
    // v = (da_p, da_s^dag): the probe vacuum port contributes <u u^dag> = 1,
    // the Stokes port enters through its creation slot with <w^dag w> = 0.
    Matrix2cd vac = Matrix2cd::Zero();
    vac(0, 0) = 1.0 - det.eta_p;
    out.normal_block = e * moments.normal_block * e + vac;
    out.anomalous_block = e * moments.anomalous_block * e;
    return out;
}

VarianceReport detected_squeezing(const MomentState& moments, const DetectorPair& det,
                                  double n_p0) {
    VarianceReport rep = variance_diff_photon(apply_detectors(moments, det), n_p0);
    if (det.dark_variance > 0.0) {
        rep.total_var += det.dark_variance;
        rep.langevin_term += det.dark_variance;
        rep.squeezing_s = rep.total_var / (rep.mean_np + rep.mean_ns);
        rep.squeezing_db = 10.0 * std::log10(rep.squeezing_s);
    }
    return rep;
}

}  // namespace aptfwm
