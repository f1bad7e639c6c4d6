#include "cenreg/walk_coefficients.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <sstream>

#include "cenreg/errors.hpp"

namespace cenreg {

// ---- signatures

MixedProductSignature MixedProductSignature::from_pattern(std::vector<bool> pattern) {
    MixedProductSignature s;
    s.t = static_cast<int>(pattern.size());
    s.pattern = std::move(pattern);
    int run = 0;
    for (bool x : s.pattern) {
        if (x) {
            ++run;
            ++s.tau;
        } else if (run > 0) {
            s.blocks.push_back(run);
            run = 0;
        }
    }
    if (run > 0) s.blocks.push_back(run);
    return s;
}

MixedProductSignature MixedProductSignature::from_mask(int t, std::uint64_t mask) {
    std::vector<bool> p(static_cast<std::size_t>(t));
    for (int k = 0; k < t; ++k) p[k] = (mask >> k) & 1U;
    return from_pattern(std::move(p));
}

bool MixedProductSignature::is_even() const {
    for (int b : blocks)
        if (b % 2) return false;
    return true;
}

// ---- walk enumeration

namespace {

constexpr int kMaxWalk = 30;

struct WalkSearch {
    int t;
    std::array<std::array<std::uint8_t, kMaxWalk + 1>, kMaxWalk + 1> mult{};
    std::array<std::uint8_t, kMaxWalk + 1> deg{};
    std::array<std::array<int, 2>, kMaxWalk + 1> nbr{};
    std::vector<std::uint64_t> bins;

    explicit WalkSearch(int len) : t(len), bins(static_cast<std::size_t>(len) + 1, 0) {}

    // Distinct edges always form a path: a move either retraces an existing edge or
    // opens a fresh vertex from an endpoint of degree < 2. Any other move would close
    // a cycle or create a branch and can never satisfy the path condition.
    void run(int step, int cur, int nv, int singles, int nedges) {
        if (t - step < singles) return;
        if (step == t) {
            if (singles == 0) ++bins[nedges];
            return;
        }
        for (int k = 0; k < deg[cur]; ++k) {
            const int w = nbr[cur][k];
            auto& m = mult[cur][w];
            const int d = (m == 1) ? -1 : 0;
            ++m;
            ++mult[w][cur];
            run(step + 1, w, nv, singles + d, nedges);
            --m;
            --mult[w][cur];
        }
        if (deg[cur] < 2) {
            const int w = nv;
            nbr[cur][deg[cur]++] = w;
            nbr[w][deg[w]++] = cur;
            mult[cur][w] = mult[w][cur] = 1;
            run(step + 1, w, nv + 1, singles + 1, nedges + 1);
            mult[cur][w] = mult[w][cur] = 0;
            --deg[w];
            --deg[cur];
        }
    }
};

std::mutex memo_mutex;
std::map<int, WalkCountTable> walk_memo;
std::map<int, GPolynomial> g_memo;
std::map<std::pair<int, int>, BiasPolynomial> b_memo;

void check_walk_length(int t, const DerivationBudget& budget) {
    if (t % 2) throw Error(ErrorKind::OddLength, "walk length " + std::to_string(t) + " is odd");
    if (t < 2) throw Error(ErrorKind::InvalidSize, "walk length must be at least 2");
    if (t > budget.walk_cap || t > kMaxWalk)
        throw Error(ErrorKind::BudgetExceeded, "walk length " + std::to_string(t) + " exceeds the enumeration cap " +
                                                   std::to_string(std::min(budget.walk_cap, kMaxWalk)));
}

}  // namespace

WalkCountTable walk_counts(int t, const DerivationBudget& budget) {
    check_walk_length(t, budget);
    {
        std::lock_guard lock(memo_mutex);
        if (auto it = walk_memo.find(t); it != walk_memo.end()) return it->second;
    }
    WalkSearch search(t);
    search.run(0, 0, 1, 0, 0);
    WalkCountTable table;
    table.t = t;
    for (int s = 1; s <= t; ++s)
        if (search.bins[s]) table.counts[s] = search.bins[s];
    std::lock_guard lock(memo_mutex);
    walk_memo.emplace(t, table);
    return table;
}

std::map<int, BigInt> gamma_polynomial(const MixedProductSignature& sig, const DerivationBudget& budget) {
    if (sig.tau == 0 || !sig.is_even()) return {};
    std::map<int, BigInt> poly{{sig.t - sig.tau, 1}};
    for (int b : sig.blocks) {
        const auto w = walk_counts(b, budget);
        std::map<int, BigInt> next;
        for (const auto& [e, c] : poly)
            for (const auto& [s, cnt] : w.counts) next[e + s] += c * cnt;
        poly.swap(next);
    }
    return poly;
}

GPolynomial derive_g(int t, const DerivationBudget& budget) {
    if (t < 1) throw Error(ErrorKind::InvalidSize, "g(t) needs t >= 1");
    if (t > budget.g_cap)
        throw Error(ErrorKind::BudgetExceeded, "g(" + std::to_string(t) + ") exceeds the derivation cap " +
                                                   std::to_string(budget.g_cap));
    {
        std::lock_guard lock(memo_mutex);
        if (auto it = g_memo.find(t); it != g_memo.end()) return it->second;
    }
    GPolynomial g;
    g.t = t;
    g.coeffs[t] = 1;
    if (t > 1) {
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << t); ++mask) {
            const auto poly = gamma_polynomial(MixedProductSignature::from_mask(t, mask), budget);
            for (const auto& [k, c] : poly)
                for (const auto& [r, v] : derive_g(k, budget).coeffs) g.coeffs[r] -= c * v;
        }
        std::erase_if(g.coeffs, [](const auto& kv) { return kv.second == 0; });
    }
    std::lock_guard lock(memo_mutex);
    g_memo.emplace(t, g);
    return g;
}

BiasPolynomial derive_b(int T, const DerivationBudget& budget) {
    if (T < 1) throw Error(ErrorKind::InvalidSize, "b_T needs T >= 1");
    if (T > budget.b_cap)
        throw Error(ErrorKind::BudgetExceeded,
                    "b_" + std::to_string(T) + " exceeds the derivation cap " + std::to_string(budget.b_cap));
    const std::pair<int, int> key{T, static_cast<int>(budget.expansion)};
    {
        std::lock_guard lock(memo_mutex);
        if (auto it = b_memo.find(key); it != b_memo.end()) return it->second;
    }
    DerivationBudget inner = budget;
    inner.g_cap = std::max(budget.g_cap, 2 * T);
    BiasPolynomial b;
    b.T = T;
    // Word slots [0, s) come from Ahat^s, slots [s, s+t) from the difference A^t - Ahat^t.
    for (int s = 1; s <= T; ++s) {
        for (int t = 1; t <= T; ++t) {
            const int len = s + t;
            const std::uint64_t tail = ((std::uint64_t{1} << t) - 1) << s;
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << len); ++mask) {
                if (!(mask & tail)) continue;
                if (budget.expansion == BiasExpansion::Tabulated && s >= 3 && ((mask >> (s - 1)) & 1U) &&
                    !((mask >> (s - 2)) & 1U))
                    continue;
                const auto poly = gamma_polynomial(MixedProductSignature::from_mask(len, mask), inner);
                for (const auto& [k, c] : poly)
                    for (const auto& [r, v] : derive_g(k, inner).coeffs) b.coeffs[{r, len}] += c * v;
            }
        }
    }
    std::erase_if(b.coeffs, [](const auto& kv) { return kv.second == 0; });
    std::lock_guard lock(memo_mutex);
    b_memo.emplace(key, b);
    return b;
}

GPolynomial reference_g(int t) {
    const auto& rows = detail::reference_g_rows();
    if (t < 1 || t > static_cast<int>(rows.size()))
        throw Error(ErrorKind::Unsupported, "reference g(t) covers t in [1, " + std::to_string(rows.size()) + "]");
    GPolynomial g;
    g.t = t;
    const auto& row = rows[t - 1];
    for (std::size_t r = 0; r < row.size(); ++r)
        if (row[r]) g.coeffs[static_cast<int>(r) + 1] = row[r];
    return g;
}

BiasPolynomial reference_b(int T) {
    const auto& tables = detail::reference_b_rows();
    if (T < 1 || T > static_cast<int>(tables.size()))
        throw Error(ErrorKind::Unsupported, "reference b_T covers T in [1, " + std::to_string(tables.size()) + "]");
    BiasPolynomial b;
    b.T = T;
    const auto& tab = tables[T - 1];
    for (std::size_t t = 0; t < tab.size(); ++t)
        for (std::size_t s = 0; s < tab[t].size(); ++s)
            if (tab[t][s]) b.coeffs[{static_cast<int>(t) + 1, static_cast<int>(s) + 2}] = tab[t][s];
    return b;
}

namespace {

template <class Key>
std::string describe_diff(const std::map<Key, BigInt>& got, const std::map<Key, BigInt>& want,
                          std::string (*fmt)(const Key&)) {
    std::ostringstream os;
    auto get = [](const std::map<Key, BigInt>& m, const Key& k) {
        auto it = m.find(k);
        return it == m.end() ? BigInt(0) : it->second;
    };
    std::map<Key, bool> keys;
    for (const auto& kv : got) keys[kv.first] = true;
    for (const auto& kv : want) keys[kv.first] = true;
    for (const auto& kv : keys) {
        const BigInt a = get(got, kv.first), b = get(want, kv.first);
        if (a != b) os << fmt(kv.first) << ": derived " << a << ", reference " << b << "; ";
    }
    return os.str();
}

std::string fmt_r(const int& r) { return "r=" + std::to_string(r); }
std::string fmt_ts(const std::pair<int, int>& k) {
    return "t=" + std::to_string(k.first) + " delta^" + std::to_string(k.second);
}

}  // namespace

std::vector<Mismatch> verify_g(int max_t, const DerivationBudget& budget) {
    std::vector<Mismatch> out;
    for (int t = 1; t <= max_t; ++t) {
        const auto d = derive_g(t, budget), r = reference_g(t);
        if (d.coeffs != r.coeffs) out.push_back({t, describe_diff<int>(d.coeffs, r.coeffs, fmt_r)});
    }
    return out;
}

std::vector<Mismatch> verify_b(int max_T, const DerivationBudget& budget) {
    std::vector<Mismatch> out;
    for (int T = 1; T <= max_T; ++T) {
        const auto d = derive_b(T, budget), r = reference_b(T);
        if (d.coeffs != r.coeffs) out.push_back({T, describe_diff<std::pair<int, int>>(d.coeffs, r.coeffs, fmt_ts)});
    }
    return out;
}

double evaluate(const GPolynomial& g, const std::vector<double>& moments) {
    double s = 0.0;
    for (const auto& [r, c] : g.coeffs) {
        if (r >= static_cast<int>(moments.size())) throw Error(ErrorKind::InvalidSize, "missing walk moment");
        s += c.convert_to<double>() * moments[r];
    }
    return s;
}

double evaluate(const BiasPolynomial& b, double delta, const std::vector<double>& moments) {
    double s = 0.0;
    for (const auto& [key, c] : b.coeffs) {
        if (key.first >= static_cast<int>(moments.size())) throw Error(ErrorKind::InvalidSize, "missing walk moment");
        s += c.convert_to<double>() * std::pow(delta, key.second) * moments[key.first];
    }
    return s;
}

}  // namespace cenreg
