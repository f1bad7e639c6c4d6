#include "cenreg/graph_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "cenreg/errors.hpp"
#include "cenreg/rng.hpp"

namespace cenreg {

SymmetricWeightedMatrix::SymmetricWeightedMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

void SymmetricWeightedMatrix::set(std::size_t i, std::size_t j, double w) {
    if (i >= n_ || j >= n_) throw Error(ErrorKind::InvalidSize, "index out of range");
    if (i == j) throw Error(ErrorKind::InvalidSize, "diagonal entries are fixed at zero");
    if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorKind::InvalidSize, "weight outside [0,1]");
    data_[i * n_ + j] = w;
    data_[j * n_ + i] = w;
}

void SymmetricWeightedMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const double* row = data_.data() + i * n_;
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += row[j] * x[j];
        y[i] = s;
    }
}

double SymmetricWeightedMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double w : data_) s += w * w;
    return std::sqrt(s);
}

std::vector<double> SymmetricWeightedMatrix::row_sums() const {
    std::vector<double> r(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r[i] += data_[i * n_ + j];
    return r;
}

void SymmetricWeightedMatrix::for_each_entry(const std::function<void(std::size_t, std::size_t, double)>& f) const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (data_[i * n_ + j] != 0.0) f(i, j, data_[i * n_ + j]);
}

SymmetricBinaryMatrix SymmetricBinaryMatrix::from_edges(std::size_t n, const std::vector<Edge>& edges) {
    if (n > std::numeric_limits<std::uint32_t>::max()) throw Error(ErrorKind::InvalidSize, "too many nodes");
    std::vector<std::pair<Edge, std::size_t>> keyed;
    keyed.reserve(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
        auto [i, j] = edges[k];
        if (i >= n || j >= n)
            throw Error(ErrorKind::InvalidSize, "edge row " + std::to_string(k + 1) + " references node outside [0, n)");
        if (i == j) throw Error(ErrorKind::InvalidSize, "edge row " + std::to_string(k + 1) + " is a self-loop");
        keyed.push_back({{std::min(i, j), std::max(i, j)}, k});
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t k = 1; k < keyed.size(); ++k)
        if (keyed[k].first == keyed[k - 1].first)
            throw Error(ErrorKind::DuplicateEdge,
                        "edge row " + std::to_string(std::max(keyed[k].second, keyed[k - 1].second) + 1) + " repeats (" +
                            std::to_string(keyed[k].first.first) + "," + std::to_string(keyed[k].first.second) + ")");

    SymmetricBinaryMatrix m;
    m.row_ptr_.assign(n + 1, 0);
    for (const auto& [e, k] : keyed) {
        ++m.row_ptr_[e.first + 1];
        ++m.row_ptr_[e.second + 1];
    }
    for (std::size_t i = 0; i < n; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
    m.col_.resize(m.row_ptr_[n]);
    std::vector<std::size_t> fill(m.row_ptr_.begin(), m.row_ptr_.end() - 1);
    for (const auto& [e, k] : keyed) {
        m.col_[fill[e.first]++] = static_cast<std::uint32_t>(e.second);
        m.col_[fill[e.second]++] = static_cast<std::uint32_t>(e.first);
    }
    for (std::size_t i = 0; i < n; ++i) std::sort(m.col_.begin() + m.row_ptr_[i], m.col_.begin() + m.row_ptr_[i + 1]);
    return m;
}

bool SymmetricBinaryMatrix::has_edge(std::size_t i, std::size_t j) const {
    auto nb = neighbors(i);
    return std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(j));
}

std::vector<Edge> SymmetricBinaryMatrix::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (std::size_t i = 0; i < size(); ++i)
        for (auto j : neighbors(i))
            if (i < j) out.emplace_back(i, j);
    return out;
}

void SymmetricBinaryMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += x[col_[k]];
        y[i] = s;
    }
}

double SymmetricBinaryMatrix::frobenius_norm() const { return std::sqrt(static_cast<double>(col_.size())); }

std::vector<double> SymmetricBinaryMatrix::row_sums() const {
    std::vector<double> r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = static_cast<double>(degree(i));
    return r;
}

void SymmetricBinaryMatrix::for_each_entry(const std::function<void(std::size_t, std::size_t, double)>& f) const {
    for (std::size_t i = 0; i < size(); ++i)
        for (auto j : neighbors(i)) f(i, j, 1.0);
}

// ---- graphons

Graphon Graphon::constant(double c) {
    if (!(c > 0.0 && c <= 1.0)) throw Error(ErrorKind::InvalidGraphon, "constant graphon needs c in (0,1]");
    Graphon g;
    g.kind_ = Kind::Constant;
    g.c_ = c;
    g.integral_ = c;
    return g;
}

Graphon Graphon::stochastic_block(std::vector<double> pi, std::vector<std::vector<double>> P) {
    const std::size_t B = pi.size();
    if (B == 0) throw Error(ErrorKind::InvalidGraphon, "SBM needs at least one block");
    double total = 0.0;
    for (double x : pi) {
        if (!(x > 0.0)) throw Error(ErrorKind::InvalidGraphon, "SBM block proportions must be positive");
        total += x;
    }
    if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorKind::InvalidGraphon, "SBM block proportions must sum to 1");
    if (P.size() != B) throw Error(ErrorKind::InvalidGraphon, "SBM P must be B x B");
    for (std::size_t a = 0; a < B; ++a) {
        if (P[a].size() != B) throw Error(ErrorKind::InvalidGraphon, "SBM P must be B x B");
        for (std::size_t b = 0; b < B; ++b) {
            if (!(P[a][b] >= 0.0 && P[a][b] <= 1.0)) throw Error(ErrorKind::InvalidGraphon, "SBM P entries must lie in [0,1]");
            if (P[a][b] != P[b][a]) throw Error(ErrorKind::InvalidGraphon, "SBM P must be symmetric");
        }
    }
    Graphon g;
    g.kind_ = Kind::StochasticBlock;
    g.cum_pi_.resize(B);
    std::partial_sum(pi.begin(), pi.end(), g.cum_pi_.begin());
    g.cum_pi_.back() = 1.0;
    for (std::size_t a = 0; a < B; ++a)
        for (std::size_t b = 0; b < B; ++b) g.integral_ += pi[a] * P[a][b] * pi[b];
    if (!(g.integral_ > 0.0)) throw Error(ErrorKind::InvalidGraphon, "graphon integrates to zero");
    g.pi_ = std::move(pi);
    g.P_ = std::move(P);
    return g;
}

Graphon Graphon::rank_r(std::vector<double> eigenvalues, std::vector<std::function<double(double)>> eigenfunctions,
                        std::uint64_t probe_seed) {
    const std::size_t R = eigenvalues.size();
    if (R == 0 || eigenfunctions.size() != R)
        throw Error(ErrorKind::InvalidGraphon, "rank-R graphon needs matching eigenvalues and eigenfunctions");
    Graphon g;
    g.kind_ = Kind::RankR;
    g.eigenvalues_ = std::move(eigenvalues);
    g.eigenfunctions_ = std::move(eigenfunctions);

    Rng rng(derive_seed(probe_seed, {0x9a7e}));
    constexpr int probes = 200000;
    std::vector<double> gram(R * R, 0.0);
    std::vector<double> phi(R);
    double integral = 0.0;
    for (int k = 0; k < probes; ++k) {
        const double u = rng.uniform(), v = rng.uniform();
        const double f = g(u, v);
        if (k < 2000) {
            if (!(f >= -1e-12 && f <= 1.0 + 1e-12)) throw Error(ErrorKind::InvalidGraphon, "rank-R graphon leaves [0,1]");
            if (std::abs(f - g(v, u)) > 1e-12) throw Error(ErrorKind::InvalidGraphon, "rank-R graphon is not symmetric");
        }
        integral += f;
        for (std::size_t r = 0; r < R; ++r) phi[r] = g.eigenfunctions_[r](u);
        for (std::size_t r = 0; r < R; ++r)
            for (std::size_t s = 0; s < R; ++s) gram[r * R + s] += phi[r] * phi[s];
    }
    g.integral_ = integral / probes;
    if (!(g.integral_ > 0.0)) throw Error(ErrorKind::InvalidGraphon, "graphon integrates to zero");
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t s = 0; s < R; ++s) {
            const double target = r == s ? 1.0 : 0.0;
            if (std::abs(gram[r * R + s] / probes - target) > 1e-2)
                g.warnings_.push_back("eigenfunctions " + std::to_string(r) + "," + std::to_string(s) +
                                      " fail the orthonormality spot-check");
        }
    return g;
}

Graphon Graphon::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind")) throw Error(ErrorKind::InvalidConfig, "graphon descriptor needs a \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return constant(j.value("c", 1.0));
    if (kind == "sbm")
        return stochastic_block(j.at("pi").get<std::vector<double>>(), j.at("P").get<std::vector<std::vector<double>>>());
    throw Error(ErrorKind::InvalidConfig, "unknown graphon kind \"" + kind + "\"");
}

nlohmann::json Graphon::to_json() const {
    switch (kind_) {
        case Kind::Constant: return {{"kind", "constant"}, {"c", c_}};
        case Kind::StochasticBlock: return {{"kind", "sbm"}, {"pi", pi_}, {"P", P_}};
        case Kind::RankR: return {{"kind", "rank-r"}, {"eigenvalues", eigenvalues_}};
    }
    return {};
}

std::size_t Graphon::block_of(double u) const {
    auto it = std::upper_bound(cum_pi_.begin(), cum_pi_.end(), u);
    return std::min<std::size_t>(it - cum_pi_.begin(), cum_pi_.size() - 1);
}

double Graphon::operator()(double u, double v) const {
    switch (kind_) {
        case Kind::Constant: return c_;
        case Kind::StochasticBlock: return P_[block_of(u)][block_of(v)];
        case Kind::RankR: {
            double s = 0.0;
            for (std::size_t r = 0; r < eigenvalues_.size(); ++r)
                s += eigenvalues_[r] * eigenfunctions_[r](u) * eigenfunctions_[r](v);
            return s;
        }
    }
    return 0.0;
}

// ---- sparsity

SparsityRule SparsityRule::from_json(const nlohmann::json& j) {
    if (j.is_number()) return constant(j.get<double>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inverse-n") return of(Kind::InverseN);
        if (s == "inverse-sqrt-n") return of(Kind::InverseSqrtN);
        if (s == "inverse-cbrt-n") return of(Kind::InverseCbrtN);
        if (s == "delocalization-threshold") return of(Kind::DelocalizationThreshold);
        throw Error(ErrorKind::InvalidConfig, "unknown sparsity rule \"" + s + "\"");
    }
    if (j.is_object() && j.value("kind", "") == "constant") return constant(j.at("p").get<double>());
    if (j.is_object() && j.contains("kind")) return from_json(j.at("kind"));
    throw Error(ErrorKind::InvalidConfig, "unrecognised sparsity rule");
}

nlohmann::json SparsityRule::to_json() const {
    switch (kind) {
        case Kind::Constant: return {{"kind", "constant"}, {"p", p}};
        case Kind::InverseN: return "inverse-n";
        case Kind::InverseSqrtN: return "inverse-sqrt-n";
        case Kind::InverseCbrtN: return "inverse-cbrt-n";
        case Kind::DelocalizationThreshold: return "delocalization-threshold";
        case Kind::Custom: return "custom";
    }
    return nullptr;
}

double SparsityRule::evaluate(std::size_t n) const {
    const double x = static_cast<double>(n);
    double r = 0.0;
    switch (kind) {
        case Kind::Constant: r = p; break;
        case Kind::InverseN: r = 1.0 / x; break;
        case Kind::InverseSqrtN: r = 1.0 / std::sqrt(x); break;
        case Kind::InverseCbrtN: r = 1.0 / std::cbrt(x); break;
        case Kind::DelocalizationThreshold: {
            const double ll = std::log(std::log(x));
            r = ll > 0.0 ? std::sqrt(std::log(x) / ll) / x : 0.0;
            break;
        }
        case Kind::Custom:
            if (!custom) throw Error(ErrorKind::InvalidSparsity, "custom sparsity rule without a callable");
            r = custom(n);
            break;
    }
    if (!(r > 0.0 && r <= 1.0))
        throw Error(ErrorKind::InvalidSparsity, "p_n = " + std::to_string(r) + " outside (0,1] at n = " + std::to_string(n));
    return r;
}

// ---- sampling

LatentSample sample_latent(std::size_t n, std::uint64_t seed) {
    if (n < 2) throw Error(ErrorKind::InvalidSize, "need at least two nodes");
    LatentSample s;
    s.seed = seed;
    s.u.resize(n);
    Rng rng(seed);
    for (auto& x : s.u) x = rng.uniform();
    return s;
}

SymmetricWeightedMatrix build_true_adjacency(const Graphon& g, const LatentSample& u, double p_n) {
    if (!(p_n > 0.0 && p_n <= 1.0)) throw Error(ErrorKind::InvalidSparsity, "p_n must lie in (0,1]");
    const std::size_t n = u.u.size();
    SymmetricWeightedMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a.set(i, j, std::clamp(p_n * g(u.u[i], u.u[j]), 0.0, 1.0));
    return a;
}

SymmetricBinaryMatrix observe(const SymmetricWeightedMatrix& a, std::uint64_t seed) {
    const std::size_t n = a.size();
    Rng rng(seed);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.uniform() < a(i, j)) edges.emplace_back(i, j);
    return SymmetricBinaryMatrix::from_edges(n, edges);
}

// ---- CSV

namespace {

std::string trim(std::string s) {
    auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
    return s;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    return out;
}

std::size_t parse_id(const std::string& s, std::size_t line) {
    std::size_t pos = 0;
    long long v = -1;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || v < 0)
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad node id \"" + s + "\"");
    return static_cast<std::size_t>(v);
}

}  // namespace

std::vector<Edge> read_edge_list(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        auto cells = split_csv(line);
        if (!header) {
            if (cells.size() < 2 || cells[0] != "i" || cells[1] != "j")
                throw Error(ErrorKind::ParseError, "edge list must start with header i,j");
            header = true;
            continue;
        }
        if (cells.size() != 2) throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected 2 columns");
        const std::size_t i = parse_id(cells[0], lineno), j = parse_id(cells[1], lineno);
        if (i == j) throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": self-loop");
        if (!seen.insert({std::min(i, j), std::max(i, j)}).second)
            throw Error(ErrorKind::DuplicateEdge, "row " + std::to_string(lineno) + " repeats edge (" + cells[0] + "," +
                                                      cells[1] + ")");
        edges.emplace_back(i, j);
    }
    if (!header) throw Error(ErrorKind::ParseError, "empty edge list");
    return edges;
}

std::vector<Edge> read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const SymmetricBinaryMatrix& m) {
    out << "i,j\n";
    for (auto [i, j] : m.edges()) out << i << ',' << j << '\n';
}

void write_weighted_csv(std::ostream& out, const SymmetricWeightedMatrix& m) {
    out << "i,j,w\n";
    out.precision(17);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (m(i, j) != 0.0) out << i << ',' << j << ',' << m(i, j) << '\n';
}

SymmetricWeightedMatrix read_weighted_csv(std::istream& in, std::size_t n) {
    SymmetricWeightedMatrix m(n);
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        auto cells = split_csv(line);
        if (!header) {
            if (cells.size() != 3 || cells[0] != "i" || cells[1] != "j" || cells[2] != "w")
                throw Error(ErrorKind::ParseError, "weighted CSV must start with header i,j,w");
            header = true;
            continue;
        }
        if (cells.size() != 3) throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected 3 columns");
        const std::size_t i = parse_id(cells[0], lineno), j = parse_id(cells[1], lineno);
        double w = 0.0;
        try {
            w = std::stod(cells[2]);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": bad weight");
        }
        m.set(i, j, w);
    }
    return m;
}

}  // namespace cenreg
