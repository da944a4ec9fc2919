#include "hcs/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hcs {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kSqrt2 = 1.4142135623730950488016887242097;

}  // namespace

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(kTwoPi);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / kSqrt2);
}

double normal_quantile(double p) {
    require(p > 0.0 && p < 1.0, "quantile argument must lie in (0,1)");
    // Acklam's rational approximation, then one Halley correction step.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p > 1.0 - plow) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    double err = normal_cdf(x) - p;
    double u = err / normal_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

double threshold_for(double mu) {
    return normal_quantile(mu);
}

namespace {

// Upper-quadrant probability P[X > h, Y > k] for a standard bivariate normal
// pair with correlation r; Genz's adaptive Gauss-Legendre scheme (absolute
// accuracy around 5e-16 for |r| < 1).
double bvnu(double h, double k, double r) {
    static const double w1[] = {0.1713244923791704, 0.3607615730481386, 0.4679139345726910};
    static const double x1[] = {-0.9324695142031521, -0.6612093864662645, -0.2386191860831969};
    static const double w2[] = {0.04717533638651183, 0.1069393259953184, 0.1600783285433462,
                                0.2031674267230659,  0.2334925365383548, 0.2491470458134028};
    static const double x2[] = {-0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
                                -0.5873179542866175, -0.3678314989981802, -0.1252334085114689};
    static const double w3[] = {0.01761400713915212, 0.04060142980038694, 0.06267204833410907,
                                0.08327674157670475, 0.1019301198172404,  0.1181945319615184,
                                0.1316886384491766,  0.1420961093183820,  0.1491729864726037,
                                0.1527533871307258};
    static const double x3[] = {-0.9931285991850949, -0.9639719272779138, -0.9122344282513259,
                                -0.8391169718222188, -0.7463319064601508, -0.6360536807265150,
                                -0.5108670019508271, -0.3737060887154195, -0.2277858511416451,
                                -0.07652652113349733};
    const double* w;
    const double* x;
    int lg;
    double ar = std::abs(r);
    if (ar < 0.3) {
        lg = 3; w = w1; x = x1;
    } else if (ar < 0.75) {
        lg = 6; w = w2; x = x2;
    } else {
        lg = 10; w = w3; x = x3;
    }
    double hk = h * k;
    double bvn = 0.0;
    if (ar < 0.925) {
        if (ar > 0.0) {
            double hs = (h * h + k * k) / 2.0;
            double asr = std::asin(r);
            for (int i = 0; i < lg; ++i) {
                for (int is = -1; is <= 1; is += 2) {
                    double sn = std::sin(asr * (is * x[i] + 1.0) / 2.0);
                    bvn += w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
                }
            }
            bvn = bvn * asr / (2.0 * kTwoPi);
        }
        return bvn + normal_cdf(-h) * normal_cdf(-k);
    }
    if (r < 0.0) {
        k = -k;
        hk = -hk;
    }
    if (ar < 1.0) {
        double as = (1.0 - r) * (1.0 + r);
        double a = std::sqrt(as);
        double bs = (h - k) * (h - k);
        double cc = (4.0 - hk) / 8.0;
        double dd = (12.0 - hk) / 16.0;
        double asr = -(bs / as + hk) / 2.0;
        if (asr > -100.0)
            bvn = a * std::exp(asr) *
                  (1.0 - cc * (bs - as) * (1.0 - dd * bs / 5.0) / 3.0 + cc * dd * as * as / 5.0);
        if (-hk < 100.0) {
            double bb = std::sqrt(bs);
            double sp = std::sqrt(kTwoPi) * normal_cdf(-bb / a);
            bvn -= std::exp(-hk / 2.0) * sp * bb * (1.0 - cc * bs * (1.0 - dd * bs / 5.0) / 3.0);
        }
        a /= 2.0;
        for (int i = 0; i < lg; ++i) {
            for (int is = -1; is <= 1; is += 2) {
                double xs = a * (is * x[i] + 1.0);
                xs *= xs;
                double rs = std::sqrt(1.0 - xs);
                double asr2 = -(bs / xs + hk) / 2.0;
                if (asr2 > -100.0) {
                    double sp = 1.0 + cc * xs * (1.0 + dd * xs);
                    double ep = std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs;
                    bvn += a * w[i] * std::exp(asr2) * (ep - sp);
                }
            }
        }
        bvn = -bvn / kTwoPi;
    }
    if (r > 0.0) return bvn + normal_cdf(-std::max(h, k));
    bvn = -bvn;
    if (k > h) bvn += normal_cdf(k) - normal_cdf(h);
    return bvn;
}

}  // namespace

double lambda_gauss(const StabilityQuery& query) {
    return lambda_gauss(query.rho, query.mu, query.nu);
}

double lambda_gauss(double rho, double mu, double nu) {
    require(std::abs(rho) <= 1.0, "correlation must lie in [-1, 1]");
    require(mu > 0.0 && mu < 1.0 && nu > 0.0 && nu < 1.0, "masses must lie in (0,1)");
    if (rho == 1.0) return std::min(mu, nu);
    if (rho == -1.0) return std::max(0.0, mu + nu - 1.0);
    double a = normal_quantile(mu);
    double b = normal_quantile(nu);
    // P[X < a, Y < b] = P[-X > -a, -Y > -b] with the same correlation.
    return bvnu(-a, -b, rho);
}

double lambda_asymptotic(double tau, double rho) {
    require(tau > 0.0 && tau < 1.0, "tau must lie in (0,1)");
    require(std::abs(rho) < 1.0, "rho must lie in (-1,1)");
    double ln = std::log(1.0 / tau);
    return std::pow(tau, 2.0 / (1.0 + rho)) *
           std::pow(4.0 * M_PI * ln, -rho / (1.0 + rho)) *
           std::pow(1.0 + rho, 1.5) / std::sqrt(1.0 - rho);
}

namespace {

// Shared plumbing for the Gaussian-analogue estimators: coefficients of f in
// the requested basis plus, for each table index, the list of (coordinate,
// nonzero digit) factors of its character.
struct AnalogueExpansion {
    int q = 0, n = 0;
    Vector coeffs;
    std::vector<std::vector<std::pair<int, int>>> factors;
};

AnalogueExpansion expand(const QFunction& f, const OrthonormalBasis& basis) {
    AnalogueExpansion ex;
    ex.q = f.q;
    ex.n = f.n;
    ex.coeffs = transform(f, basis).coeffs;
    std::size_t size = static_cast<std::size_t>(ex.coeffs.size());
    ex.factors.resize(size);
    for (std::size_t idx = 0; idx < size; ++idx) {
        std::size_t rest = idx;
        for (int j = f.n - 1; j >= 0; --j) {
            int digit = static_cast<int>(rest % static_cast<std::size_t>(f.q));
            rest /= static_cast<std::size_t>(f.q);
            if (digit != 0) ex.factors[idx].push_back({j, digit});
        }
    }
    return ex;
}

// f~(z) = sum_x f^(x) prod_{(i,a) in x} z[i][a-1]; z is n x (q-1).
double evaluate_analogue(const AnalogueExpansion& ex, const std::vector<std::vector<double>>& z) {
    double total = 0.0;
    for (std::size_t idx = 0; idx < ex.factors.size(); ++idx) {
        double c = ex.coeffs(static_cast<Eigen::Index>(idx));
        if (c == 0.0) continue;
        double prod = 1.0;
        for (auto [coord, digit] : ex.factors[idx])
            prod *= z[static_cast<std::size_t>(coord)][static_cast<std::size_t>(digit - 1)];
        total += c * prod;
    }
    return total;
}

}  // namespace

McEstimate real_analogue_inner_mc(const QFunction& f, const QFunction& g,
                                  const MarkovOp* T, std::uint64_t samples,
                                  std::uint64_t seed) {
    require(f.q == g.q && f.n == g.n, "functions live on different domains");
    require(samples >= 1, "need at least one sample");
    if (T != nullptr) require(T->m == f.q, "operator alphabet differs from function alphabet");
    OrthonormalBasis basis = (T != nullptr) ? eigenbasis_of(*T) : build_basis(f.q);
    AnalogueExpansion ef = expand(f, basis);
    AnalogueExpansion eg = expand(g, basis);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> z(static_cast<std::size_t>(f.n),
                                       std::vector<double>(static_cast<std::size_t>(f.q - 1)));
    std::vector<std::vector<double>> w = z;
    double sum = 0.0, sum2 = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (auto& row : z)
            for (double& v : row) v = gauss(rng);
        if (T != nullptr) {
            // w^i_a = lambda_a z^i_a + sqrt(1-lambda_a^2) * fresh noise.
            for (int i = 0; i < f.n; ++i) {
                for (int a = 1; a < f.q; ++a) {
                    double lam = T->eigenvalues(a);
                    double mix = 1.0 - lam * lam;
                    w[static_cast<std::size_t>(i)][static_cast<std::size_t>(a - 1)] =
                        lam * z[static_cast<std::size_t>(i)][static_cast<std::size_t>(a - 1)] +
                        std::sqrt(std::max(mix, 0.0)) * gauss(rng);
                }
            }
        }
        double v = evaluate_analogue(ef, z) * evaluate_analogue(eg, T != nullptr ? w : z);
        sum += v;
        sum2 += v * v;
    }
    McEstimate est;
    est.samples = samples;
    est.value = sum / static_cast<double>(samples);
    if (samples > 1) {
        double var = (sum2 - sum * sum / static_cast<double>(samples)) /
                     static_cast<double>(samples - 1);
        est.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
    }
    return est;
}

double real_analogue_inner_exact(const QFunction& f, const QFunction& g, const MarkovOp* T) {
    require(f.q == g.q && f.n == g.n, "functions live on different domains");
    if (T != nullptr) require(T->m == f.q, "operator alphabet differs from function alphabet");
    OrthonormalBasis basis = (T != nullptr) ? eigenbasis_of(*T) : build_basis(f.q);
    Vector fc = transform(f, basis).coeffs;
    Vector gc = transform(g, basis).coeffs;
    double total = 0.0;
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(fc.size()); ++idx) {
        double factor = 1.0;
        if (T != nullptr) {
            std::size_t rest = idx;
            for (int j = 0; j < f.n; ++j) {
                int digit = static_cast<int>(rest % static_cast<std::size_t>(f.q));
                rest /= static_cast<std::size_t>(f.q);
                if (digit != 0) factor *= T->eigenvalues(digit);
            }
        }
        total += factor * fc(static_cast<Eigen::Index>(idx)) * gc(static_cast<Eigen::Index>(idx));
    }
    return total;
}

double chop(double x) {
    if (x < 0.0) return 0.0;
    if (x > 1.0) return 1.0;
    return x;
}

ChopReport chop_defect(const QFunction& f, std::uint64_t samples, std::uint64_t seed) {
    validate(f);
    require(samples >= 1, "need at least one sample");
    require(f.values.minCoeff() >= 0.0 && f.values.maxCoeff() <= 1.0,
            "function must take values in [0,1]");
    AnalogueExpansion ex = expand(f, build_basis(f.q));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> z(static_cast<std::size_t>(f.n),
                                       std::vector<double>(static_cast<std::size_t>(f.q - 1)));
    double dev_sum = 0.0, dev_sum2 = 0.0, norm_sum = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (auto& row : z)
            for (double& v : row) v = gauss(rng);
        double val = evaluate_analogue(ex, z);
        double dev = val - chop(val);
        dev_sum += dev * dev;
        dev_sum2 += dev * dev * dev * dev;
        norm_sum += val * val;
    }
    ChopReport report;
    report.samples = samples;
    report.defect = std::sqrt(dev_sum / static_cast<double>(samples));
    report.norm_mc = std::sqrt(norm_sum / static_cast<double>(samples));
    if (samples > 1) {
        double var = (dev_sum2 - dev_sum * dev_sum / static_cast<double>(samples)) /
                     static_cast<double>(samples - 1);
        report.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
    }
    return report;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::bounds_hold: return "bounds-hold";
        case Verdict::hypothesis_violated: return "hypothesis-violated";
        case Verdict::bounds_violated: return "bounds-violated";
    }
    throw InvalidParameterError("unknown verdict");
}

namespace {

// lambda_gauss extended to the closed unit square by its limits, so reports
// on constant-0/1 functions stay well-defined.
double lambda_or_limit(double rho, double mu, double nu) {
    if (mu <= 0.0 || nu <= 0.0) return 0.0;
    if (mu >= 1.0) return nu;
    if (nu >= 1.0) return mu;
    return lambda_gauss(rho, mu, nu);
}

void check_unit_range(const QFunction& f, const char* which) {
    validate(f);
    require(f.values.minCoeff() >= -1e-12 && f.values.maxCoeff() <= 1.0 + 1e-12,
            std::string(which) + " must take values in [0,1]");
}

}  // namespace

BoundReport mo_bound_report(const QFunction& f, const QFunction& g, const MarkovOp& T,
                            int k, double delta, double epsilon, bool fish) {
    check_unit_range(f, "f");
    check_unit_range(g, "g");
    require(f.q == g.q && f.n == g.n, "functions live on different domains");
    require(k >= 0, "degree bound must be >= 0");
    require(delta > 0.0, "influence threshold must be positive");
    require(epsilon >= 0.0, "epsilon must be nonnegative");

    BoundReport report;
    report.k = k;
    report.delta = delta;
    report.epsilon = epsilon;
    report.fish = fish;
    report.mu = mean(f);
    report.nu = mean(g);
    report.rho = spectral_radius(T);

    OrthonormalBasis basis = build_basis(f.q);
    FourierTable tf = transform(f, basis);
    FourierTable tg = transform(g, basis);
    if (!fish) {
        require(T.m == f.q, "operator alphabet differs from function alphabet");
        report.inner = noisy_inner(f, T, g);
        for (int i = 1; i <= f.n; ++i) {
            double both = std::min(low_level_influence(tf, i, k), low_level_influence(tg, i, k));
            if (both >= delta) report.violating_coords.push_back(i);
        }
    } else {
        require(f.n % 2 == 0, "fish mode needs an even number of coordinates");
        require(T.m == f.q * f.q, "fish mode needs an operator on [q^2]");
        require(pair_marginal_uniform(T), "pair operator must have a uniform (x2,y2) marginal");
        report.inner = noisy_inner(bunch_fn(f), T, bunch_fn(g));
        for (int i = 1; i <= f.n / 2; ++i) {
            double fo = low_level_influence(tf, 2 * i - 1, k);
            double fe = low_level_influence(tf, 2 * i, k);
            double go = low_level_influence(tg, 2 * i - 1, k);
            double ge = low_level_influence(tg, 2 * i, k);
            bool bad = std::min(fo, go) >= delta || std::min(fo, ge) >= delta ||
                       std::min(fe, go) >= delta;
            if (bad) report.violating_coords.push_back(i);
        }
    }

    report.lambda_upper = lambda_or_limit(report.rho, report.mu, report.nu);
    // Lower bound two ways: directly as <F_mu, U_rho (1 - F_{1-nu})> (a
    // quadrant probability at correlation -rho), and by complementing the
    // upper bound applied to 1-g.
    double direct = lambda_or_limit(-report.rho, report.mu, report.nu);
    double complemented = report.mu - lambda_or_limit(report.rho, report.mu, 1.0 - report.nu);
    require(std::abs(direct - complemented) <= 1e-9,
            "lower-bound evaluations disagree beyond tolerance");
    report.lambda_lower = direct;
    report.lower = report.lambda_lower - epsilon;
    report.upper = report.lambda_upper + epsilon;

    if (!report.violating_coords.empty())
        report.verdict = Verdict::hypothesis_violated;
    else if (report.lower <= report.inner && report.inner <= report.upper)
        report.verdict = Verdict::bounds_hold;
    else
        report.verdict = Verdict::bounds_violated;
    return report;
}

}  // namespace hcs
