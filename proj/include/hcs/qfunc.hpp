#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "hcs/errors.hpp"

namespace hcs {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Dense tables cap out at 2^24 entries (n*log2(q) <= 24).
inline constexpr std::size_t kMaxTableEntries = std::size_t{1} << 24;

// Validated q^n; throws SizeLimitError beyond the dense-table cap.
std::size_t table_size(int q, int n);

// Real-valued function on [q]^n.  The table is row-major with coordinate 1
// most significant: index(x) = sum_j x_j * q^(n-j).
struct QFunction {
    int q = 2;
    int n = 0;
    Vector values;
};

QFunction make_qfunction(int q, int n);
void validate(const QFunction& f);

// --- index arithmetic -------------------------------------------------------

std::size_t index_of_point(const std::vector<int>& x, int q);
std::vector<int> point_of_index(std::size_t idx, int q, int n);
// Digit of coordinate i (1-based) in the index.
int digit_at(std::size_t idx, int q, int n, int i);
// |x| = number of nonzero coordinates of the point with this index.
int index_weight(std::size_t idx, int q, int n);

// --- orthonormal basis ------------------------------------------------------

// Column a holds alpha_a; column 0 is all-ones.  Orthonormal under the
// uniform measure on [q]: (1/q) * columns^T * columns = I.
struct OrthonormalBasis {
    int q = 2;
    Matrix columns;
};

enum class BasisOrder { standard, reversed };

// Gram-Schmidt on {1, e_1, ..., e_{q-1}} (or the e_a in reversed order) under
// the uniform measure; deterministic for fixed q and order.
OrthonormalBasis build_basis(int q, BasisOrder order = BasisOrder::standard);
void validate(const OrthonormalBasis& basis);

// --- Fourier transform ------------------------------------------------------

struct FourierTable {
    int q = 2;
    int n = 0;
    Vector coeffs;
    OrthonormalBasis basis;
};

// n passes of a q-point transform per coordinate; cost O(n * q^(n+1)).
FourierTable transform(const QFunction& f, const OrthonormalBasis& basis);
QFunction inverse_transform(const FourierTable& table);

// Generic per-coordinate linear pass: out restricted to coordinate i is
// A * (in restricted to coordinate i), for every setting of the rest.
Vector apply_per_coordinate(const Vector& values, int q, int n, const Matrix& A);
// Same pass on the single coordinate `coord` (1-based).
Vector apply_at_coordinate(const Vector& values, int q, int n, int coord, const Matrix& A);

// --- moments and influences -------------------------------------------------

double mean(const QFunction& f);
// <f,g> = E[f(x)g(x)] under the uniform measure.
double inner(const QFunction& f, const QFunction& g);
double variance(const QFunction& f);

// I_i(f): expectation over the other coordinates of the conditional variance
// over x_i, straight from the value table.
double influence(const QFunction& f, int i);
// Same quantity through Parseval: sum of squared coefficients with x_i != 0.
double influence_from_fourier(const FourierTable& table, int i);
// I_i^{<=k}(f): coefficient mass with x_i != 0 and |x| <= k.
double low_level_influence(const FourierTable& table, int i, int k);
double low_level_influence(const QFunction& f, int i, int k);

// --- bunch / unbunch --------------------------------------------------------

// [q]^{2m} -> [q^2]^m, pairing consecutive coordinates; the pair (a,b)
// becomes the symbol a*q+b, which makes this the identity on value tables.
QFunction bunch_fn(const QFunction& f);
QFunction unbunch_fn(const QFunction& f);

// --- stock test functions ---------------------------------------------------

QFunction dictator(int q, int n, int i, int a);
QFunction plurality(int q, int n);
// 1{ #{j : x_j = symbol} >= count }.
QFunction threshold_indicator(int q, int n, int symbol, int count);
// kind in {"dictator", "plurality", "threshold-indicator"}; i is the dictator
// coordinate, a the symbol (also the counted symbol for the threshold kind,
// whose count is fixed at ceil(n/q) here; call threshold_indicator directly
// for other counts).
QFunction named_function(const std::string& kind, int q, int n, int i = 1, int a = 0);

}  // namespace hcs
