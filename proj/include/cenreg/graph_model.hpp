#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace cenreg {

using Edge = std::pair<std::size_t, std::size_t>;

// Read-only view shared by the dense weighted and sparse binary matrices.
class SymmetricMatrix {
public:
    virtual ~SymmetricMatrix() = default;

    virtual std::size_t size() const = 0;
    // y = M x
    virtual void multiply(std::span<const double> x, std::span<double> y) const = 0;
    virtual double frobenius_norm() const = 0;
    virtual std::vector<double> row_sums() const = 0;
    // Calls f(i, j, w) for every nonzero off-diagonal entry, both orientations.
    virtual void for_each_entry(const std::function<void(std::size_t, std::size_t, double)>& f) const = 0;
};

// Dense n x n, both triangles stored, row-major.
class SymmetricWeightedMatrix final : public SymmetricMatrix {
public:
    SymmetricWeightedMatrix() = default;
    explicit SymmetricWeightedMatrix(std::size_t n);

    std::size_t size() const override { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    // Writes both (i,j) and (j,i). Rejects diagonal writes and weights outside [0,1].
    void set(std::size_t i, std::size_t j, double w);

    void multiply(std::span<const double> x, std::span<double> y) const override;
    double frobenius_norm() const override;
    std::vector<double> row_sums() const override;
    void for_each_entry(const std::function<void(std::size_t, std::size_t, double)>& f) const override;

    const std::vector<double>& data() const { return data_; }
    bool operator==(const SymmetricWeightedMatrix& o) const { return n_ == o.n_ && data_ == o.data_; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

// Unweighted simple graph in CSR. Every edge is stored in both rows so that
// a product costs one pass over the neighbour lists.
class SymmetricBinaryMatrix final : public SymmetricMatrix {
public:
    SymmetricBinaryMatrix() : row_ptr_(1, 0) {}
    // Edges are undirected, listed once. Self-loops, out-of-range ids and
    // repeated pairs are rejected; the row number in the error is 1-based.
    static SymmetricBinaryMatrix from_edges(std::size_t n, const std::vector<Edge>& edges);

    std::size_t size() const override { return row_ptr_.size() - 1; }
    std::size_t num_edges() const { return col_.size() / 2; }
    std::size_t degree(std::size_t i) const { return row_ptr_[i + 1] - row_ptr_[i]; }
    std::span<const std::uint32_t> neighbors(std::size_t i) const {
        return {col_.data() + row_ptr_[i], col_.data() + row_ptr_[i + 1]};
    }
    bool has_edge(std::size_t i, std::size_t j) const;
    // Upper-triangle edge list (i < j), sorted.
    std::vector<Edge> edges() const;

    void multiply(std::span<const double> x, std::span<double> y) const override;
    double frobenius_norm() const override;
    std::vector<double> row_sums() const override;
    void for_each_entry(const std::function<void(std::size_t, std::size_t, double)>& f) const override;

    bool operator==(const SymmetricBinaryMatrix& o) const { return row_ptr_ == o.row_ptr_ && col_ == o.col_; }

private:
    std::vector<std::size_t> row_ptr_;
    std::vector<std::uint32_t> col_;
};

class Graphon {
public:
    enum class Kind { Constant, StochasticBlock, RankR };

    static Graphon constant(double c);
    static Graphon stochastic_block(std::vector<double> pi, std::vector<std::vector<double>> P);
    // f(u,v) = sum_r eigenvalues[r] * phi_r(u) * phi_r(v). Range and symmetry are probed
    // at random points; orthonormality is only spot-checked and reported in warnings().
    static Graphon rank_r(std::vector<double> eigenvalues, std::vector<std::function<double(double)>> eigenfunctions,
                          std::uint64_t probe_seed = 0);
    static Graphon from_json(const nlohmann::json& j);

    nlohmann::json to_json() const;
    double operator()(double u, double v) const;
    Kind kind() const { return kind_; }
    // Integral of f over the unit square (Monte Carlo estimate for rank-R).
    double integral() const { return integral_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    Graphon() = default;
    std::size_t block_of(double u) const;

    Kind kind_ = Kind::Constant;
    double c_ = 0.0;
    std::vector<double> pi_, cum_pi_;
    std::vector<std::vector<double>> P_;
    std::vector<double> eigenvalues_;
    std::vector<std::function<double(double)>> eigenfunctions_;
    double integral_ = 0.0;
    std::vector<std::string> warnings_;
};

struct LatentSample {
    std::vector<double> u;
    std::uint64_t seed = 0;
};

struct SparsityRule {
    enum class Kind { Constant, InverseN, InverseSqrtN, InverseCbrtN, DelocalizationThreshold, Custom };

    Kind kind = Kind::Constant;
    double p = 1.0;
    std::function<double(std::size_t)> custom;

    static SparsityRule constant(double p) { return {Kind::Constant, p, {}}; }
    static SparsityRule of(Kind k) { return {k, 0.0, {}}; }
    // Accepts "inverse-n", "inverse-sqrt-n", "inverse-cbrt-n", "delocalization-threshold",
    // a bare number, or {"kind":"constant","p":...}.
    static SparsityRule from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    // Throws InvalidSparsity unless the result lies in (0,1].
    double evaluate(std::size_t n) const;
};

LatentSample sample_latent(std::size_t n, std::uint64_t seed);
SymmetricWeightedMatrix build_true_adjacency(const Graphon& g, const LatentSample& u, double p_n);
SymmetricBinaryMatrix observe(const SymmetricWeightedMatrix& a, std::uint64_t seed);

// Edge-list CSV with header `i,j`.
std::vector<Edge> read_edge_list(std::istream& in);
std::vector<Edge> read_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const SymmetricBinaryMatrix& m);
// Weighted CSV with header `i,j,w`, upper triangle, zero entries omitted.
void write_weighted_csv(std::ostream& out, const SymmetricWeightedMatrix& m);
SymmetricWeightedMatrix read_weighted_csv(std::istream& in, std::size_t n);

}  // namespace cenreg
