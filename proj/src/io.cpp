#include "hcs/io.hpp"

#include <fstream>
#include <sstream>

#include "hcs/errors.hpp"

namespace hcs {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw InvalidParameterError(std::string("missing field '") + key + "'");
    return j.at(key);
}

template <typename T>
T get_as(const Json& j, const char* what) {
    try {
        return j.get<T>();
    } catch (const Json::exception&) {
        throw InvalidParameterError(std::string("malformed value for ") + what);
    }
}

std::vector<int> int_vector(const Json& j, const char* what) {
    return get_as<std::vector<int>>(j, what);
}

Json pairs_to_json(const std::vector<std::pair<int, int>>& pairs) {
    Json out = Json::array();
    for (const auto& [a, b] : pairs) out.push_back(Json::array({a, b}));
    return out;
}

std::vector<std::pair<int, int>> pairs_from_json(const Json& j, const char* what) {
    std::vector<std::pair<int, int>> out;
    if (!j.is_array()) throw InvalidParameterError(std::string(what) + " must be an array");
    for (const Json& e : j) {
        auto v = int_vector(e, what);
        if (v.size() != 2) throw InvalidParameterError(std::string(what) + " entries must be pairs");
        out.emplace_back(v[0], v[1]);
    }
    return out;
}

}  // namespace

Json to_json(const QFunction& f) {
    Json values = Json::array();
    for (Eigen::Index i = 0; i < f.values.size(); ++i) values.push_back(f.values(i));
    return Json{{"q", f.q}, {"n", f.n}, {"values", std::move(values)}};
}

QFunction qfunction_from_json(const Json& j) {
    QFunction f = make_qfunction(get_as<int>(field(j, "q"), "q"),
                                 get_as<int>(field(j, "n"), "n"));
    const Json& values = field(j, "values");
    if (!values.is_array() || static_cast<Eigen::Index>(values.size()) != f.values.size())
        throw InvalidParameterError("values array does not match q^n");
    for (Eigen::Index i = 0; i < f.values.size(); ++i)
        f.values(i) = get_as<double>(values.at(i), "values");
    return f;
}

Json to_json(const MarkovOp& T) {
    Json matrix = Json::array();
    for (const auto& row : T.rational) {
        Json r = Json::array();
        for (const Rat& entry : row) r.push_back(to_string(entry));
        matrix.push_back(std::move(r));
    }
    return Json{{"m", T.m}, {"matrix", std::move(matrix)}};
}

MarkovOp markov_from_json(const Json& j) {
    const int m = get_as<int>(field(j, "m"), "m");
    const Json& matrix = field(j, "matrix");
    if (!matrix.is_array() || static_cast<int>(matrix.size()) != m)
        throw InvalidParameterError("matrix row count does not match m");
    RatMatrix entries(m, std::vector<Rat>(m));
    for (int x = 0; x < m; ++x) {
        const Json& row = matrix.at(x);
        if (!row.is_array() || static_cast<int>(row.size()) != m)
            throw InvalidParameterError("matrix column count does not match m");
        for (int y = 0; y < m; ++y)
            entries[x][y] = parse_rational(get_as<std::string>(row.at(y), "matrix entry"));
    }
    return make_markov(std::move(entries));
}

Json to_json(const ConstraintKind& c) {
    Json out{{"kind", constraint_family_name(c.family)}};
    switch (c.family) {
        case ConstraintFamily::one_to_one:
            out["perm"] = c.perm;
            break;
        case ConstraintFamily::two_to_two:
        case ConstraintFamily::alpha:
            out["perm1"] = c.perm1;
            out["perm2"] = c.perm2;
            break;
        case ConstraintFamily::explicit_rel:
            out["relation"] = pairs_to_json(c.relation);
            break;
    }
    return out;
}

ConstraintKind constraint_from_json(const Json& j, int R) {
    const auto family =
        parse_constraint_family(get_as<std::string>(field(j, "kind"), "kind"));
    ConstraintKind c;
    switch (family) {
        case ConstraintFamily::one_to_one:
            c = one_to_one(int_vector(field(j, "perm"), "perm"));
            break;
        case ConstraintFamily::two_to_two:
            c = two_to_two(int_vector(field(j, "perm1"), "perm1"),
                           int_vector(field(j, "perm2"), "perm2"));
            break;
        case ConstraintFamily::alpha:
            c = alpha_constraint(int_vector(field(j, "perm1"), "perm1"),
                                 int_vector(field(j, "perm2"), "perm2"));
            break;
        case ConstraintFamily::explicit_rel:
            c = explicit_constraint(R, pairs_from_json(field(j, "relation"), "relation"));
            break;
    }
    require(c.R == R, "constraint range does not match the instance");
    return c;
}

Json to_json(const LabelCoverInstance& G) {
    Json edges = Json::array();
    for (const Edge& e : G.edges) {
        Json entry = to_json(e.constraint);
        entry["u"] = e.u;
        entry["v"] = e.v;
        edges.push_back(std::move(entry));
    }
    return Json{{"vertices", G.nvertices}, {"R", G.R}, {"edges", std::move(edges)}};
}

LabelCoverInstance instance_from_json(const Json& j) {
    const int nvertices = get_as<int>(field(j, "vertices"), "vertices");
    const int R = get_as<int>(field(j, "R"), "R");
    const Json& edges = field(j, "edges");
    if (!edges.is_array()) throw InvalidParameterError("edges must be an array");
    std::vector<Edge> list;
    for (const Json& e : edges) {
        Edge edge;
        edge.u = get_as<int>(field(e, "u"), "u");
        edge.v = get_as<int>(field(e, "v"), "v");
        edge.constraint = constraint_from_json(e, R);
        list.push_back(std::move(edge));
    }
    return make_instance(nvertices, R, std::move(list));
}

Json to_json(const BipartiteLC& lc) {
    Json pool = Json::array();
    for (const Relation& rel : lc.pool) pool.push_back(pairs_to_json(rel));
    Json out{{"X", lc.nx}, {"Y", lc.ny},     {"R", lc.R},
             {"d", lc.d}, {"weighted", lc.weighted}, {"pool", std::move(pool)},
             {"rel", lc.rel}};
    if (lc.weighted) {
        Json weights = Json::array();
        for (const auto& row : lc.w) {
            Json r = Json::array();
            for (const Rat& entry : row) r.push_back(to_string(entry));
            weights.push_back(std::move(r));
        }
        out["weights"] = std::move(weights);
    } else {
        Json edges = Json::array();
        for (const auto& [x, y] : lc.edges) edges.push_back(Json::array({x, y}));
        out["edges"] = std::move(edges);
    }
    return out;
}

BipartiteLC bipartite_from_json(const Json& j) {
    const int nx = get_as<int>(field(j, "X"), "X");
    const int ny = get_as<int>(field(j, "Y"), "Y");
    const int R = get_as<int>(field(j, "R"), "R");
    const int d = get_as<int>(field(j, "d"), "d");
    const bool weighted = get_as<bool>(field(j, "weighted"), "weighted");
    const Json& pool_json = field(j, "pool");
    if (!pool_json.is_array()) throw InvalidParameterError("pool must be an array");
    std::vector<Relation> pool;
    for (const Json& rel : pool_json) pool.push_back(pairs_from_json(rel, "pool relation"));
    auto rel = get_as<std::vector<std::vector<int>>>(field(j, "rel"), "rel");
    if (weighted) {
        const Json& weights = field(j, "weights");
        if (!weights.is_array() || static_cast<int>(weights.size()) != nx)
            throw InvalidParameterError("weights row count does not match X");
        std::vector<std::vector<Rat>> w(nx);
        for (int x = 0; x < nx; ++x) {
            const Json& row = weights.at(x);
            if (!row.is_array() || static_cast<int>(row.size()) != ny)
                throw InvalidParameterError("weights column count does not match Y");
            for (const Json& entry : row)
                w[x].push_back(parse_rational(get_as<std::string>(entry, "weight")));
        }
        return make_weighted(nx, ny, R, d, std::move(pool), std::move(rel), std::move(w));
    }
    auto edges = pairs_from_json(field(j, "edges"), "edges");
    return make_unweighted(nx, ny, R, d, std::move(pool), std::move(rel), std::move(edges));
}

Json to_json(const TLabeling& L) {
    return Json{{"t", L.t}, {"assignment", L.assignment}};
}

TLabeling tlabeling_from_json(const Json& j) {
    TLabeling L;
    L.t = get_as<int>(field(j, "t"), "t");
    L.assignment =
        get_as<std::vector<std::vector<int>>>(field(j, "assignment"), "assignment");
    require(L.t >= 1, "label budget must be positive");
    for (const auto& set : L.assignment)
        require(static_cast<int>(set.size()) <= L.t, "label set exceeds t");
    return L;
}

Json ids_to_json(const std::vector<long long>& ids) {
    return Json{{"vertices", ids}};
}

std::vector<long long> ids_from_json(const Json& j) {
    if (j.is_array()) return get_as<std::vector<long long>>(j, "vertices");
    return get_as<std::vector<long long>>(field(j, "vertices"), "vertices");
}

Json to_json(const BoundReport& r) {
    return Json{{"inner", r.inner},
                {"mu", r.mu},
                {"nu", r.nu},
                {"rho", r.rho},
                {"lambda_lower", r.lambda_lower},
                {"lambda_upper", r.lambda_upper},
                {"lower", r.lower},
                {"upper", r.upper},
                {"k", r.k},
                {"delta", r.delta},
                {"epsilon", r.epsilon},
                {"fish", r.fish},
                {"violating_coords", r.violating_coords},
                {"verdict", verdict_name(r.verdict)}};
}

Json to_json(const DecodeResult& r) {
    Json checks = Json::array();
    for (const DecodedEdge& c : r.checks)
        checks.push_back(Json{{"edge", c.edge}, {"satisfied", c.satisfied}});
    return Json{{"J", r.J},
                {"density", r.density},
                {"t", r.t},
                {"labeling", to_json(r.labeling)},
                {"checks", std::move(checks)},
                {"satisfied", r.satisfied}};
}

Json to_json(const ChromaticResult& r) {
    return Json{{"exceeds", r.exceeds}, {"chi", r.chi}, {"coloring", r.coloring}};
}

Json to_json(const MisResult& r) {
    return Json{{"size", r.size}, {"witness", r.witness}};
}

Json to_json(const LabelingResult& r) {
    return Json{{"value", to_string(r.value)}, {"witness", to_json(r.witness)}};
}

std::string to_dimacs(const Graph& g) {
    std::ostringstream out;
    out << "p edge " << g.n << ' ' << g.edges.size() << '\n';
    for (const auto& [a, b] : g.edges) out << "e " << a + 1 << ' ' << b + 1 << '\n';
    return out.str();
}

std::string to_dimacs(const BlockGraph& g) {
    const auto edges = enumerate_edges(g);
    const long long n = vertex_count(g);
    Json map = Json::array();
    for (long long v = 0; v < n; ++v)
        map.push_back(Json::array({block_of_vertex(g, v), vertex_coords(g, v)}));
    Json header{{"kind", reduction_kind_name(g.kind)},
                {"q", g.q},
                {"coords", g.ncoords},
                {"blocks", g.source.nvertices},
                {"block_size", g.block_size},
                {"map", std::move(map)}};
    std::ostringstream out;
    out << "c " << header.dump() << '\n';
    out << "p edge " << n << ' ' << edges.size() << '\n';
    for (const auto& [a, b] : edges) out << "e " << a + 1 << ' ' << b + 1 << '\n';
    return out.str();
}

Graph graph_from_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    long long n = -1, m = -1;
    std::vector<std::pair<long long, long long>> edges;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string tag;
        if (!(row >> tag) || tag == "c") continue;
        if (tag == "p") {
            std::string kind;
            if (!(row >> kind >> n >> m) || kind != "edge")
                throw InvalidParameterError("malformed problem line");
        } else if (tag == "e") {
            long long a = 0, b = 0;
            if (!(row >> a >> b)) throw InvalidParameterError("malformed edge line");
            if (n < 0) throw InvalidParameterError("edge line before problem line");
            edges.emplace_back(a - 1, b - 1);
        } else {
            throw InvalidParameterError("unknown line tag: " + tag);
        }
    }
    if (n < 0) throw InvalidParameterError("missing problem line");
    if (m >= 0 && m != static_cast<long long>(edges.size()))
        throw InvalidParameterError("edge count does not match the problem line");
    return make_graph(n, edges);
}

Json read_json_file(const std::string& path) {
    try {
        return Json::parse(slurp_file(path));
    } catch (const Json::exception& e) {
        throw InvalidParameterError("cannot parse " + path + ": " + e.what());
    }
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParameterError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParameterError("cannot write " + path);
    out << text;
    if (!out) throw InvalidParameterError("write failed for " + path);
}

}  // namespace hcs
