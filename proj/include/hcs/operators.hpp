#pragma once

#include <string>
#include <vector>

#include "hcs/qfunc.hpp"
#include "hcs/rational.hpp"

namespace hcs {

// Symmetric stochastic operator on [m].  The transition matrix is kept in
// exact rationals (support checks must never go through floats) next to a
// double view and its spectral data.
struct MarkovOp {
    int m = 0;
    RatMatrix rational;
    Matrix matrix;
    // Sorted descending; eigenvalues(0) == 1 pairs with the all-ones column.
    Vector eigenvalues;
    // Columns orthonormal under the uniform measure on [m]; column a is the
    // eigenvector for eigenvalues(a); column 0 is all-ones.
    Matrix eigenbasis;
    std::vector<std::vector<char>> support;
};

// Validates symmetry, nonnegativity and exact row sums, then diagonalizes.
MarkovOp make_markov(RatMatrix entries);

bool supported(const MarkovOp& T, int x, int y);
OrthonormalBasis eigenbasis_of(const MarkovOp& T);

// Noise operator with diagonal 1/q + (1-1/q)rho and off-diagonal (1-rho)/q.
// rho must keep the entries nonnegative, i.e. lie in [-1/(q-1), 1].
MarkovOp beckner(int q, const Rat& rho);

enum class GadgetKind { almost3, col4, alpha };

GadgetKind parse_gadget_kind(const std::string& name);
std::string gadget_kind_name(GadgetKind kind);

struct GadgetWeights {
    Rat b1, b2, b3;
};
// almost3 has no pattern weights; col4 returns (1/12, 1/8, 3/8); alpha
// returns (0, 1/2, 1/2).
GadgetWeights gadget_weights(GadgetKind kind);

// almost3: 3x3, zero diagonal, 1/2 elsewhere.
// col4: on [4]^2 (16 states, pair (u,v) encoded u*4+v); transitions only
//   between pairs with disjoint symbol sets, weighted b1 for (x,x)<->(y,y),
//   b2 for (x,x)<->(y,z), b3 for (x,y)<->(z,w).
// alpha: on [3]^2 (9 states); weights b1 for (x,x)<->(y,y), b2 for
//   (x,x)<->(y,z), b3 for (x,y)<->(z,y), all symbols distinct per pattern.
// Pattern multiplicities are asserted at construction.
MarkovOp gadget_operator(GadgetKind kind);

// r(T) = max(|lambda_1|, |lambda_{m-1}|).
double spectral_radius(const MarkovOp& T);

// (T^{tensor n} f)(x) = E_{y ~ T from x}[f(y)], coordinate by coordinate.
QFunction apply_tensor(const MarkovOp& T, const QFunction& f);
// Same operator through the eigen-expansion: each coefficient in T's
// eigenbasis is scaled by prod_a lambda_a^{|x|_a}.
QFunction apply_tensor_eigen(const MarkovOp& T, const QFunction& f);

// <f, T^{tensor n} g> under the uniform measure.
double noisy_inner(const QFunction& f, const MarkovOp& T, const QFunction& g);

// Averages f over the coordinates in S (1-based); output no longer depends
// on them.
QFunction average_over(const QFunction& f, const std::vector<int>& S);

// For T on [q^2]: exact distribution of (x_2, y_2) when (x_1,x_2) is uniform
// and (y_1,y_2) is one T-step from it.
RatMatrix pair_marginal_distribution(const MarkovOp& T);
bool pair_marginal_uniform(const MarkovOp& T);

}  // namespace hcs
