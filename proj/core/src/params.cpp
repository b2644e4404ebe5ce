#include "tcellsim/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tcellsim {

ModelParams default_params() {
    ModelParams p{};
    const double half_life_rate = std::log(2.0) / 15.7;
    p.lambda_thymic = half_life_rate;
    p.lambda_n = 0.003;
    p.mu_n = 4.4;
    p.n_p_bar = 392.0;
    p.c = p.mu_n * (1.0 - std::log(2.0) / p.n_p_bar);
    p.lambda_mn = 0.0;
    p.mu_m = 0.05;
    p.lambda_na = 0.0;
    p.lambda_npa = 0.1;
    p.lambda_a = half_life_rate;
    p.mu_a = 44.4;
    p.s_bar = 0.0;
    p.b = 4.2;
    p.n_b = p.n_p_bar;
    p.s0_terms = {{{7024.0, 12.02, 3.623},
                   {5.203e5, -127.8, 64.47},
                   {1937.0, 7.357, 6.03},
                   {1.259e18, 1309.0, 214.4}}};
    p.s0_scale = 0.82;
    return p;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw std::invalid_argument("ModelParams: " + what);
    }
}

}  // namespace

void ModelParams::validate() const {
    require(lambda_thymic >= 0.0, "lambda_thymic must be >= 0");
    require(lambda_n >= 0.0, "lambda_n must be >= 0");
    require(mu_n >= 0.0, "mu_n must be >= 0");
    require(c >= 0.0, "c must be >= 0");
    require(lambda_mn >= 0.0, "lambda_mn must be >= 0");
    require(mu_m >= 0.0, "mu_m must be >= 0");
    require(lambda_na >= 0.0, "lambda_na must be >= 0");
    require(lambda_npa >= 0.0, "lambda_npa must be >= 0");
    require(lambda_a >= 0.0, "lambda_a must be >= 0");
    require(mu_a >= 0.0, "mu_a must be >= 0");
    require(s_bar >= 0.0, "s_bar must be >= 0");
    require(n_p_bar > 0.0, "n_p_bar must be > 0");
    require(b >= 0.0, "b must be >= 0");
    require(n_b > 0.0, "n_b must be > 0");
    require(s0_scale >= 0.0, "s0_scale must be >= 0");
    for (const auto& term : s0_terms) {
        require(term.width > 0.0, "every s0 Gaussian width must be > 0");
    }
}

}  // namespace tcellsim
