#pragma once

#include "tcellsim/params.hpp"
#include "tcellsim/state.hpp"

namespace tcellsim {

/// Gaussian-sum thymic export fit s0(t), cells mm^-3 year^-1.
/// s0_scale * sum_i amplitude_i * exp(-((t - center_i)/width_i)^2).
double thymic_output(double t, const ModelParams& p);

/// Export modulation s(Np) = 1 / (1 + s_bar * Np / n_p_bar).
/// Identically 1 with the default s_bar = 0.
double export_modulation(double n_p, const ModelParams& p);

/// TREC-dilution death amplification
/// g(Np) = 1 + b * (Np/n_p_bar) / (1 + Np/n_p_bar);
/// monotone non-decreasing in Np, bounded in [1, 1 + b).
double trec_death_factor(double n_p, const ModelParams& p);

/// Proliferation dilution h(N, Np) = 1 / (1 + (N + Np)/n_b);
/// strictly decreasing in N + Np, in (0, 1].
double proliferation_dilution(double n, double n_p, const ModelParams& p);

/// Thymic influx into N: s0(t) * exp(-lambda_thymic * t) * s(Np).
/// Shared by the ODE right-hand side and the stochastic influx draw.
double thymic_influx(double t, double n_p, const ModelParams& p);

/// Right-hand side of the compartment system:
///   dN/dt  = thymic_influx(t, Np) - [lambda_n + mu_n g(Np)] N
///   dNp/dt = lambda_n N + [c h(N,Np) - mu_n] Np + lambda_mn M
///   dA/dt  = lambda_na N + lambda_npa Np - (lambda_a + mu_a) A
///   dM/dt  = lambda_a A - mu_m M - lambda_mn M
StateDerivative derivatives(const StateVector& s, const ModelParams& p);

}  // namespace tcellsim
