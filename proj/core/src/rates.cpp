#include "tcellsim/rates.hpp"

#include <cmath>

namespace tcellsim {

double thymic_output(double t, const ModelParams& p) {
    double sum = 0.0;
    for (const auto& term : p.s0_terms) {
        const double u = (t - term.center) / term.width;
        sum += term.amplitude * std::exp(-u * u);
    }
    return p.s0_scale * sum;
}

double export_modulation(double n_p, const ModelParams& p) {
    return 1.0 / (1.0 + p.s_bar * n_p / p.n_p_bar);
}

double trec_death_factor(double n_p, const ModelParams& p) {
    const double x = n_p / p.n_p_bar;
    return 1.0 + p.b * x / (1.0 + x);
}

double proliferation_dilution(double n, double n_p, const ModelParams& p) {
    return 1.0 / (1.0 + (n + n_p) / p.n_b);
}

double thymic_influx(double t, double n_p, const ModelParams& p) {
    return thymic_output(t, p) * std::exp(-p.lambda_thymic * t) *
           export_modulation(n_p, p);
}

StateDerivative derivatives(const StateVector& s, const ModelParams& p) {
    const double influx = thymic_influx(s.t, s.n_p, p);
    const double g = trec_death_factor(s.n_p, p);
    const double h = proliferation_dilution(s.n, s.n_p, p);

    StateDerivative d;
    d.dn = influx - (p.lambda_n + p.mu_n * g) * s.n;
    d.dn_p = p.lambda_n * s.n + (p.c * h - p.mu_n) * s.n_p + p.lambda_mn * s.m;
    d.da = p.lambda_na * s.n + p.lambda_npa * s.n_p - (p.lambda_a + p.mu_a) * s.a;
    d.dm = p.lambda_a * s.a - p.mu_m * s.m - p.lambda_mn * s.m;
    return d;
}

}  // namespace tcellsim
