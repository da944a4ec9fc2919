#include "hcs/operators.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace hcs {

namespace {

// Eigendecomposition that keeps the all-ones eigenvector in column 0 exactly.
// Rotate T into the uniform-orthonormal basis B (so the all-ones direction
// becomes coordinate 0 and splits off), diagonalize the rest symmetrically,
// and map back.
void decompose(MarkovOp& op) {
    int m = op.m;
    OrthonormalBasis basis = build_basis(m);
    Matrix A = basis.columns.transpose() * op.matrix * basis.columns / m;
    op.eigenvalues = Vector(m);
    op.eigenbasis = Matrix(m, m);
    op.eigenvalues(0) = 1.0;
    op.eigenbasis.col(0) = Vector::Ones(m);
    if (m == 1) return;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(A.bottomRightCorner(m - 1, m - 1));
    require(solver.info() == Eigen::Success, "eigendecomposition failed");
    // Solver returns ascending order; we store descending after the leading 1.
    for (int j = 0; j < m - 1; ++j) {
        int src = m - 2 - j;
        op.eigenvalues(j + 1) = solver.eigenvalues()(src);
        Vector coords = Vector::Zero(m);
        coords.tail(m - 1) = solver.eigenvectors().col(src);
        op.eigenbasis.col(j + 1) = basis.columns * coords;
    }
}

}  // namespace

MarkovOp make_markov(RatMatrix entries) {
    MarkovOp op;
    op.m = static_cast<int>(entries.size());
    require(op.m >= 2, "operator needs at least two states");
    for (const auto& row : entries)
        require(static_cast<int>(row.size()) == op.m, "transition matrix must be square");
    for (int x = 0; x < op.m; ++x) {
        Rat sum(0);
        for (int y = 0; y < op.m; ++y) {
            require(entries[x][y] >= Rat(0), "negative transition weight");
            require(entries[x][y] == entries[y][x], "transition matrix must be symmetric");
            sum += entries[x][y];
        }
        require(sum == Rat(1), "row " + std::to_string(x) + " does not sum to 1");
    }
    op.rational = std::move(entries);
    op.matrix = Matrix(op.m, op.m);
    op.support.assign(static_cast<std::size_t>(op.m),
                      std::vector<char>(static_cast<std::size_t>(op.m), 0));
    for (int x = 0; x < op.m; ++x) {
        for (int y = 0; y < op.m; ++y) {
            op.matrix(x, y) = to_double(op.rational[x][y]);
            op.support[x][y] = op.rational[x][y] > Rat(0) ? 1 : 0;
        }
    }
    decompose(op);
    return op;
}

bool supported(const MarkovOp& T, int x, int y) {
    require(0 <= x && x < T.m && 0 <= y && y < T.m, "state out of range");
    return T.support[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] != 0;
}

OrthonormalBasis eigenbasis_of(const MarkovOp& T) {
    return OrthonormalBasis{T.m, T.eigenbasis};
}

MarkovOp beckner(int q, const Rat& rho) {
    require(q >= 2, "alphabet size must be >= 2");
    require(rho <= Rat(1) && rho >= Rat(-1), "rho must lie in [-1, 1]");
    Rat diag = Rat(1, q) + Rat(q - 1, q) * rho;
    Rat off = (Rat(1) - rho) / q;
    require(diag >= Rat(0),
            "rho below -1/(q-1) does not give a stochastic matrix");
    RatMatrix entries(static_cast<std::size_t>(q),
                      std::vector<Rat>(static_cast<std::size_t>(q), off));
    for (int x = 0; x < q; ++x) entries[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)] = diag;
    return make_markov(std::move(entries));
}

GadgetKind parse_gadget_kind(const std::string& name) {
    if (name == "almost3") return GadgetKind::almost3;
    if (name == "col4") return GadgetKind::col4;
    if (name == "alpha") return GadgetKind::alpha;
    throw InvalidParameterError("unknown gadget kind: " + name);
}

std::string gadget_kind_name(GadgetKind kind) {
    switch (kind) {
        case GadgetKind::almost3: return "almost3";
        case GadgetKind::col4: return "col4";
        case GadgetKind::alpha: return "alpha";
    }
    throw InvalidParameterError("unknown gadget kind");
}

GadgetWeights gadget_weights(GadgetKind kind) {
    switch (kind) {
        case GadgetKind::almost3: return {Rat(0), Rat(1, 2), Rat(0)};
        case GadgetKind::col4: return {Rat(1, 12), Rat(1, 8), Rat(3, 8)};
        case GadgetKind::alpha: return {Rat(0), Rat(1, 2), Rat(1, 2)};
    }
    throw InvalidParameterError("unknown gadget kind");
}

namespace {

MarkovOp build_almost3() {
    RatMatrix entries(3, std::vector<Rat>(3, Rat(1, 2)));
    for (int x = 0; x < 3; ++x) entries[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)] = Rat(0);
    return make_markov(std::move(entries));
}

// Pair states over [q]: (u,v) encoded as u*q+v.
MarkovOp build_pair_gadget(int q, GadgetKind kind) {
    GadgetWeights w = gadget_weights(kind);
    int m = q * q;
    RatMatrix entries(static_cast<std::size_t>(m), std::vector<Rat>(static_cast<std::size_t>(m), Rat(0)));
    for (int s = 0; s < m; ++s) {
        int x1 = s / q, x2 = s % q;
        int diag_targets = 0, cross_targets = 0;
        for (int t = 0; t < m; ++t) {
            int y1 = t / q, y2 = t % q;
            Rat weight(0);
            if (kind == GadgetKind::col4) {
                // Disjoint symbol sets, then the three all-distinct patterns.
                bool disjoint = x1 != y1 && x1 != y2 && x2 != y1 && x2 != y2;
                if (!disjoint) continue;
                if (x1 == x2 && y1 == y2) weight = w.b1;
                else if (x1 == x2 || y1 == y2) weight = w.b2;
                else weight = w.b3;
            } else {
                // alpha patterns: (x,x)<->(y,y) b1, (x,x)<->(y,z) b2 both
                // ways, (x,y)<->(z,y) b3; symbols distinct per pattern.
                if (x1 == x2 && y1 == y2 && x1 != y1) weight = w.b1;
                else if (x1 == x2 && y1 != y2 && y1 != x1 && y2 != x1) weight = w.b2;
                else if (y1 == y2 && x1 != x2 && x1 != y1 && x2 != y1) weight = w.b2;
                else if (x1 != x2 && y1 != y2 && x2 == y2 && x1 != y1 && x1 != x2 && y1 != x2) weight = w.b3;
                else continue;
            }
            entries[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] = weight;
            if (y1 == y2) ++diag_targets;
            else ++cross_targets;
        }
        // The pattern multiplicities behind the row-sum equations.
        if (kind == GadgetKind::col4) {
            if (x1 == x2) require(diag_targets == 3 && cross_targets == 6,
                                  "col4 diagonal-state pattern count is off");
            else require(diag_targets == 2 && cross_targets == 2,
                         "col4 cross-state pattern count is off");
        } else {
            if (x1 == x2) require(diag_targets == 2 && cross_targets == 2,
                                  "alpha diagonal-state pattern count is off");
            else require(diag_targets == 1 && cross_targets == 1,
                         "alpha cross-state pattern count is off");
        }
    }
    return make_markov(std::move(entries));
}

}  // namespace

MarkovOp gadget_operator(GadgetKind kind) {
    switch (kind) {
        case GadgetKind::almost3: return build_almost3();
        case GadgetKind::col4: return build_pair_gadget(4, kind);
        case GadgetKind::alpha: return build_pair_gadget(3, kind);
    }
    throw InvalidParameterError("unknown gadget kind");
}

double spectral_radius(const MarkovOp& T) {
    require(T.m >= 2, "spectral radius needs at least two states");
    return std::max(std::abs(T.eigenvalues(1)), std::abs(T.eigenvalues(T.m - 1)));
}

QFunction apply_tensor(const MarkovOp& T, const QFunction& f) {
    validate(f);
    require(T.m == f.q, "operator alphabet differs from function alphabet");
    QFunction out;
    out.q = f.q;
    out.n = f.n;
    out.values = apply_per_coordinate(f.values, f.q, f.n, T.matrix);
    return out;
}

QFunction apply_tensor_eigen(const MarkovOp& T, const QFunction& f) {
    validate(f);
    require(T.m == f.q, "operator alphabet differs from function alphabet");
    FourierTable table = transform(f, eigenbasis_of(T));
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(table.coeffs.size()); ++idx) {
        double factor = 1.0;
        std::size_t rest = idx;
        for (int j = 0; j < f.n; ++j) {
            int digit = static_cast<int>(rest % static_cast<std::size_t>(f.q));
            rest /= static_cast<std::size_t>(f.q);
            if (digit != 0) factor *= T.eigenvalues(digit);
        }
        table.coeffs(static_cast<Eigen::Index>(idx)) *= factor;
    }
    return inverse_transform(table);
}

double noisy_inner(const QFunction& f, const MarkovOp& T, const QFunction& g) {
    require(f.q == g.q && f.n == g.n, "functions live on different domains");
    return inner(f, apply_tensor(T, g));
}

QFunction average_over(const QFunction& f, const std::vector<int>& S) {
    validate(f);
    Matrix avg = Matrix::Constant(f.q, f.q, 1.0 / f.q);
    QFunction out = f;
    for (int coord : S) {
        require(1 <= coord && coord <= f.n, "averaging coordinate out of range");
        out.values = apply_at_coordinate(out.values, f.q, f.n, coord, avg);
    }
    return out;
}

RatMatrix pair_marginal_distribution(const MarkovOp& T) {
    int q = static_cast<int>(std::lround(std::sqrt(static_cast<double>(T.m))));
    require(q >= 2 && q * q == T.m, "operator must act on a square alphabet");
    RatMatrix marginal(static_cast<std::size_t>(q), std::vector<Rat>(static_cast<std::size_t>(q), Rat(0)));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int x1 = 0; x1 < q; ++x1)
                for (int y1 = 0; y1 < q; ++y1)
                    marginal[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] +=
                        Rat(1, T.m) * T.rational[static_cast<std::size_t>(x1 * q + a)]
                                                [static_cast<std::size_t>(y1 * q + b)];
    return marginal;
}

bool pair_marginal_uniform(const MarkovOp& T) {
    RatMatrix marginal = pair_marginal_distribution(T);
    for (const auto& row : marginal)
        for (const Rat& p : row)
            if (p != Rat(1, static_cast<long long>(marginal.size() * marginal.size()))) return false;
    return true;
}

}  // namespace hcs
