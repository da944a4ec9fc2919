#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcs/operators.hpp"
#include "hcs/qfunc.hpp"

namespace hcs {

double normal_pdf(double x);
double normal_cdf(double x);
// Inverse normal CDF on (0,1); |normal_cdf(result) - p| <= 1e-12 down to
// p = 1e-12 (and far beyond).
double normal_quantile(double p);

// t with E_gamma[1_{x<t}] = mu.
double threshold_for(double mu);

struct StabilityQuery {
    double rho = 0.0;
    double mu = 0.5;
    double nu = 0.5;
};

// <F_mu, U_rho F_nu>_gamma = P[X < t_mu, Y < t_nu] for a standard bivariate
// normal pair with correlation rho; absolute accuracy ~1e-9 (a high-accuracy
// orthant routine; the exact limits min(mu,nu) / max(0, mu+nu-1) take over
// only at |rho| = 1, where the routine itself degenerates).
double lambda_gauss(const StabilityQuery& query);
double lambda_gauss(double rho, double mu, double nu);

// tau^{2/(1+rho)} * (4*pi*ln(1/tau))^{-rho/(1+rho)} * (1+rho)^{3/2}/(1-rho)^{1/2}.
double lambda_asymptotic(double tau, double rho);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

// Monte Carlo estimate of <f~, g~>_gamma, or <f~, T~^{tensor n} g~>_gamma
// when T is given (T~ = U_{lambda_1} x ... x U_{lambda_{q-1}} in T's
// eigenbasis).  Deterministic for a fixed seed.
McEstimate real_analogue_inner_mc(const QFunction& f, const QFunction& g,
                                  const MarkovOp* T, std::uint64_t samples,
                                  std::uint64_t seed);
// The matching exact value sum_x (prod_a lambda_a^{|x|_a}) f^(x) g^(x).
double real_analogue_inner_exact(const QFunction& f, const QFunction& g,
                                 const MarkovOp* T);

// Clamp to [0,1], three cases.
double chop(double x);

struct ChopReport {
    double defect = 0.0;    // sqrt of the mean squared clamping deviation
    double norm_mc = 0.0;   // ||f~||_2 on the same sample set
    double std_error = 0.0; // standard error of the mean squared deviation
    std::uint64_t samples = 0;
};

// Monte Carlo estimate of ||f~ - chop(f~)||_2 for [0,1]-valued f.
ChopReport chop_defect(const QFunction& f, std::uint64_t samples, std::uint64_t seed);

enum class Verdict { bounds_hold, hypothesis_violated, bounds_violated };
std::string verdict_name(Verdict v);

struct BoundReport {
    double inner = 0.0;
    double mu = 0.0, nu = 0.0, rho = 0.0;
    // Raw Gaussian values: lambda_lower = <F_mu, U_rho (1 - F_{1-nu})>,
    // lambda_upper = <F_mu, U_rho F_nu>.
    double lambda_lower = 0.0, lambda_upper = 0.0;
    // The same bounds with -epsilon / +epsilon already folded in.
    double lower = 0.0, upper = 0.0;
    int k = 0;
    double delta = 0.0, epsilon = 0.0;
    bool fish = false;
    // 1-based coordinates (pair indices in fish mode) where the low-level
    // influence hypothesis fails.
    std::vector<int> violating_coords;
    Verdict verdict = Verdict::bounds_hold;
};

// Checks <f, T^{tensor n} g> (fish mode: the bunched inner product under a
// pair operator with uniform (x_2,y_2) marginal) against the Gaussian
// bounds with rho = r(T).  The lower bound is evaluated both directly and by
// complementing the upper bound applied to 1-g; the two must agree to 1e-9.
BoundReport mo_bound_report(const QFunction& f, const QFunction& g, const MarkovOp& T,
                            int k, double delta, double epsilon, bool fish = false);

}  // namespace hcs
