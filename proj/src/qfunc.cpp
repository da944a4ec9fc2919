#include "hcs/qfunc.hpp"

#include <algorithm>
#include <cmath>

namespace hcs {

std::size_t table_size(int q, int n) {
    require(q >= 2, "alphabet size must be >= 2");
    require(n >= 0, "dimension must be >= 0");
    std::size_t size = 1;
    for (int j = 0; j < n; ++j) {
        if (size > kMaxTableEntries / static_cast<std::size_t>(q))
            throw SizeLimitError("q^n exceeds the dense-table cap of 2^24 entries");
        size *= static_cast<std::size_t>(q);
    }
    return size;
}

QFunction make_qfunction(int q, int n) {
    QFunction f;
    f.q = q;
    f.n = n;
    f.values = Vector::Zero(static_cast<Eigen::Index>(table_size(q, n)));
    return f;
}

void validate(const QFunction& f) {
    std::size_t size = table_size(f.q, f.n);
    require(static_cast<std::size_t>(f.values.size()) == size,
            "value table length differs from q^n");
    require(f.values.allFinite(), "value table contains non-finite entries");
}

std::size_t index_of_point(const std::vector<int>& x, int q) {
    std::size_t idx = 0;
    for (int digit : x) {
        require(0 <= digit && digit < q, "point coordinate out of range");
        idx = idx * static_cast<std::size_t>(q) + static_cast<std::size_t>(digit);
    }
    return idx;
}

std::vector<int> point_of_index(std::size_t idx, int q, int n) {
    std::vector<int> x(static_cast<std::size_t>(n));
    for (int j = n - 1; j >= 0; --j) {
        x[static_cast<std::size_t>(j)] = static_cast<int>(idx % static_cast<std::size_t>(q));
        idx /= static_cast<std::size_t>(q);
    }
    return x;
}

int digit_at(std::size_t idx, int q, int n, int i) {
    require(1 <= i && i <= n, "coordinate out of range");
    std::size_t stride = 1;
    for (int j = 0; j < n - i; ++j) stride *= static_cast<std::size_t>(q);
    return static_cast<int>((idx / stride) % static_cast<std::size_t>(q));
}

int index_weight(std::size_t idx, int q, int n) {
    int w = 0;
    for (int j = 0; j < n; ++j) {
        if (idx % static_cast<std::size_t>(q) != 0) ++w;
        idx /= static_cast<std::size_t>(q);
    }
    return w;
}

OrthonormalBasis build_basis(int q, BasisOrder order) {
    require(q >= 2, "alphabet size must be >= 2");
    Matrix cols(q, q);
    cols.col(0) = Vector::Ones(q);
    for (int a = 1; a < q; ++a) {
        int seed = (order == BasisOrder::standard) ? a - 1 : q - a;
        Vector v = Vector::Unit(q, seed);
        // Gram-Schmidt under <u,w> = (1/q) sum u_i w_i.
        for (int b = 0; b < a; ++b) v -= (v.dot(cols.col(b)) / q) * cols.col(b);
        double norm = std::sqrt(v.squaredNorm() / q);
        require(norm > 1e-12, "basis construction degenerated");
        cols.col(a) = v / norm;
    }
    return OrthonormalBasis{q, std::move(cols)};
}

void validate(const OrthonormalBasis& basis) {
    require(basis.columns.rows() == basis.q && basis.columns.cols() == basis.q,
            "basis must consist of q vectors of length q");
    require((basis.columns.col(0).array() == 1.0).all(), "alpha_0 must be all-ones");
    Matrix gram = basis.columns.transpose() * basis.columns / basis.q;
    require((gram - Matrix::Identity(basis.q, basis.q)).cwiseAbs().maxCoeff() < 1e-12,
            "basis is not orthonormal under the uniform measure");
}

namespace {

void coordinate_pass(Vector& cur, int q, std::size_t stride, const Matrix& A) {
    Vector scratch(q), image(q);
    std::size_t size = static_cast<std::size_t>(cur.size());
    for (std::size_t block = 0; block < size; block += stride * static_cast<std::size_t>(q)) {
        for (std::size_t off = 0; off < stride; ++off) {
            std::size_t base = block + off;
            for (int y = 0; y < q; ++y)
                scratch(y) = cur(static_cast<Eigen::Index>(base + stride * static_cast<std::size_t>(y)));
            image.noalias() = A * scratch;
            for (int y = 0; y < q; ++y)
                cur(static_cast<Eigen::Index>(base + stride * static_cast<std::size_t>(y))) = image(y);
        }
    }
}

}  // namespace

Vector apply_per_coordinate(const Vector& values, int q, int n, const Matrix& A) {
    require(A.rows() == q && A.cols() == q, "per-coordinate matrix must be q x q");
    Vector cur = values;
    std::size_t stride = static_cast<std::size_t>(values.size()) / static_cast<std::size_t>(q);
    for (int coord = 0; coord < n; ++coord) {  // coordinate 1 (largest stride) first
        coordinate_pass(cur, q, stride, A);
        stride /= static_cast<std::size_t>(q);
    }
    return cur;
}

Vector apply_at_coordinate(const Vector& values, int q, int n, int coord, const Matrix& A) {
    require(A.rows() == q && A.cols() == q, "per-coordinate matrix must be q x q");
    require(1 <= coord && coord <= n, "coordinate out of range");
    std::size_t stride = 1;
    for (int j = 0; j < n - coord; ++j) stride *= static_cast<std::size_t>(q);
    Vector cur = values;
    coordinate_pass(cur, q, stride, A);
    return cur;
}

FourierTable transform(const QFunction& f, const OrthonormalBasis& basis) {
    validate(f);
    require(basis.q == f.q, "basis alphabet differs from function alphabet");
    Matrix analysis = basis.columns.transpose() / f.q;  // row a: <., alpha_a>
    FourierTable table;
    table.q = f.q;
    table.n = f.n;
    table.coeffs = apply_per_coordinate(f.values, f.q, f.n, analysis);
    table.basis = basis;
    return table;
}

QFunction inverse_transform(const FourierTable& table) {
    QFunction f;
    f.q = table.q;
    f.n = table.n;
    f.values = apply_per_coordinate(table.coeffs, table.q, table.n, table.basis.columns);
    validate(f);
    return f;
}

double mean(const QFunction& f) {
    return f.values.mean();
}

double inner(const QFunction& f, const QFunction& g) {
    require(f.q == g.q && f.n == g.n, "functions live on different domains");
    return f.values.dot(g.values) / static_cast<double>(f.values.size());
}

double variance(const QFunction& f) {
    double m = mean(f);
    return f.values.squaredNorm() / static_cast<double>(f.values.size()) - m * m;
}

double influence(const QFunction& f, int i) {
    validate(f);
    require(1 <= i && i <= f.n, "coordinate out of range");
    std::size_t size = static_cast<std::size_t>(f.values.size());
    std::size_t stride = 1;
    for (int j = 0; j < f.n - i; ++j) stride *= static_cast<std::size_t>(f.q);
    double total = 0.0;
    std::size_t groups = 0;
    for (std::size_t block = 0; block < size; block += stride * static_cast<std::size_t>(f.q)) {
        for (std::size_t off = 0; off < stride; ++off) {
            double s = 0.0, s2 = 0.0;
            for (int y = 0; y < f.q; ++y) {
                double v = f.values(static_cast<Eigen::Index>(block + off + stride * static_cast<std::size_t>(y)));
                s += v;
                s2 += v * v;
            }
            double m = s / f.q;
            total += s2 / f.q - m * m;
            ++groups;
        }
    }
    return total / static_cast<double>(groups);
}

double influence_from_fourier(const FourierTable& table, int i) {
    return low_level_influence(table, i, table.n);
}

double low_level_influence(const FourierTable& table, int i, int k) {
    require(1 <= i && i <= table.n, "coordinate out of range");
    require(k >= 0, "degree bound must be >= 0");
    double total = 0.0;
    std::size_t size = static_cast<std::size_t>(table.coeffs.size());
    for (std::size_t idx = 0; idx < size; ++idx) {
        if (digit_at(idx, table.q, table.n, i) == 0) continue;
        if (index_weight(idx, table.q, table.n) > k) continue;
        double c = table.coeffs(static_cast<Eigen::Index>(idx));
        total += c * c;
    }
    return total;
}

double low_level_influence(const QFunction& f, int i, int k) {
    return low_level_influence(transform(f, build_basis(f.q)), i, k);
}

QFunction bunch_fn(const QFunction& f) {
    validate(f);
    require(f.n % 2 == 0, "bunching needs an even number of coordinates");
    // index(x over [q]^{2m}) == index(<x> over [q^2]^m) with pair symbol a*q+b,
    // so the table carries over untouched.
    QFunction g;
    g.q = f.q * f.q;
    g.n = f.n / 2;
    g.values = f.values;
    return g;
}

QFunction unbunch_fn(const QFunction& f) {
    validate(f);
    int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(f.q))));
    require(root >= 2 && root * root == f.q, "alphabet size must be a perfect square");
    QFunction g;
    g.q = root;
    g.n = 2 * f.n;
    g.values = f.values;
    return g;
}

QFunction dictator(int q, int n, int i, int a) {
    QFunction f = make_qfunction(q, n);
    require(1 <= i && i <= n, "dictator coordinate out of range");
    require(0 <= a && a < q, "dictator symbol out of range");
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(f.values.size()); ++idx)
        if (digit_at(idx, q, n, i) == a) f.values(static_cast<Eigen::Index>(idx)) = 1.0;
    return f;
}

QFunction plurality(int q, int n) {
    require(n >= 1, "plurality needs at least one coordinate");
    QFunction f = make_qfunction(q, n);
    std::vector<int> counts(static_cast<std::size_t>(q));
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(f.values.size()); ++idx) {
        std::fill(counts.begin(), counts.end(), 0);
        std::size_t rest = idx;
        for (int j = 0; j < n; ++j) {
            ++counts[rest % static_cast<std::size_t>(q)];
            rest /= static_cast<std::size_t>(q);
        }
        // Ties break toward the smallest symbol.
        int best = 0;
        for (int s = 1; s < q; ++s)
            if (counts[static_cast<std::size_t>(s)] > counts[static_cast<std::size_t>(best)]) best = s;
        f.values(static_cast<Eigen::Index>(idx)) = static_cast<double>(best);
    }
    return f;
}

QFunction threshold_indicator(int q, int n, int symbol, int count) {
    require(0 <= symbol && symbol < q, "threshold symbol out of range");
    require(count >= 0, "threshold count must be >= 0");
    QFunction f = make_qfunction(q, n);
    for (std::size_t idx = 0; idx < static_cast<std::size_t>(f.values.size()); ++idx) {
        int hits = 0;
        std::size_t rest = idx;
        for (int j = 0; j < n; ++j) {
            if (static_cast<int>(rest % static_cast<std::size_t>(q)) == symbol) ++hits;
            rest /= static_cast<std::size_t>(q);
        }
        if (hits >= count) f.values(static_cast<Eigen::Index>(idx)) = 1.0;
    }
    return f;
}

QFunction named_function(const std::string& kind, int q, int n, int i, int a) {
    if (kind == "dictator") return dictator(q, n, i, a);
    if (kind == "plurality") return plurality(q, n);
    if (kind == "threshold-indicator")
        return threshold_indicator(q, n, a, (n + q - 1) / q);
    throw InvalidParameterError("unknown named function: " + kind);
}

}  // namespace hcs
