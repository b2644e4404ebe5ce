#pragma once

#include <array>

namespace tcellsim {

/// One Gaussian term of the thymic-export fit:
/// amplitude * exp(-((t - center) / width)^2).
struct ThymicExportTerm {
    double amplitude;  ///< cells mm^-3 year^-1
    double center;     ///< years
    double width;      ///< years, > 0
};

/**
 * Rate constants and scaling values of the four-compartment naive T cell
 * model. The defaults returned by default_params() are the published fit;
 * every scalar field can be overridden independently through the CLI
 * config (keys params.*).
 *
 * Units: rates in year^-1, populations in cells per mm^3 of peripheral
 * blood, time in years.
 */
struct ModelParams {
    double lambda_thymic;  ///< thymic involution rate
    double lambda_n;       ///< thymic-naive -> proliferated incorporation rate
    double mu_n;           ///< death rate of naive cells (both naive pools)
    double c;              ///< peripheral proliferation rate
    double lambda_mn;      ///< memory -> proliferated-naive reversion rate
    double mu_m;           ///< memory death rate
    double lambda_na;      ///< activation rate of thymic-naive cells
    double lambda_npa;     ///< activation rate of proliferated naive cells
    double lambda_a;       ///< active -> memory reversion rate
    double mu_a;           ///< active-cell death rate
    double s_bar;          ///< export scaling value (dimensionless)
    double n_p_bar;        ///< proliferated-naive equilibrium scale (cells/mm^3)
    double b;              ///< TREC-dilution death amplification (dimensionless)

    /// Dilution scale of the proliferation term. No published value exists;
    /// defaults to n_p_bar and should be treated as a modelling choice
    /// (override with params.n_b).
    double n_b;

    std::array<ThymicExportTerm, 4> s0_terms;  ///< Gaussian-sum export fit
    double s0_scale;                           ///< global prefactor of the fit

    /// Throws std::invalid_argument naming the offending field if any
    /// invariant is violated (rates >= 0, scales > 0, widths > 0).
    void validate() const;
};

/// The published parameter set. lambda_thymic and lambda_a share the
/// ln(2)/15.7 default; c is derived as mu_n * (1 - ln(2)/n_p_bar).
ModelParams default_params();

}  // namespace tcellsim
