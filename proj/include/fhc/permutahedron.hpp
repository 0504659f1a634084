#ifndef FHC_PERMUTAHEDRON_HPP
#define FHC_PERMUTAHEDRON_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fhc/combinatorics.hpp"

namespace fhc::perm {

/// Permutation of [n] as a sequence of values 1..n.
using Permutation = std::vector<int>;

/// pi_k: insert n = |pi|+1 at position k (1-based).
inline Permutation insert_max(const Permutation& pi, int k) {
    Permutation out = pi;
    out.insert(out.begin() + (k - 1), static_cast<int>(pi.size()) + 1);
    return out;
}

inline Permutation identity(int n) {
    Permutation p(n);
    for (int i = 0; i < n; ++i) p[i] = i + 1;
    return p;
}

inline std::string to_string(const Permutation& p) {
    std::string out;
    bool wide = p.size() >= 10;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (wide && i) out += ",";
        out += std::to_string(p[i]);
    }
    return out;
}

using Sink = std::function<void(const Permutation&)>;

namespace detail {

/// Streams the path of length 2^n - 2 from 1..n to n,1..n-1, possibly backwards.
/// Junction duplicates are emitted twice here and removed by the caller.
inline void stream_path(int n, bool backwards, const Sink& out) {
    if (n == 1) {
        out({1});
        return;
    }
    if (n == 2) {
        if (!backwards) {
            out({1, 2});
            out({2, 1});
        } else {
            out({2, 1});
            out({1, 2});
        }
        return;
    }
    // tau = n-1, 1, ..., n-2 is the end of the smaller path
    Permutation tau(n - 1);
    tau[0] = n - 1;
    for (int i = 1; i < n - 1; ++i) tau[i] = i;
    auto lift_back = [&](const Permutation& p) { out(insert_max(p, n)); };
    auto lift_front = [&](const Permutation& p) { out(insert_max(p, 1)); };
    if (!backwards) {
        stream_path(n - 1, false, lift_back);
        for (int k = n; k >= 1; --k) out(insert_max(tau, k));
        stream_path(n - 1, true, lift_front);
    } else {
        stream_path(n - 1, false, lift_front);
        for (int k = 1; k <= n; ++k) out(insert_max(tau, k));
        stream_path(n - 1, true, lift_back);
    }
}

class Dedup {
public:
    explicit Dedup(Sink s) : sink_(std::move(s)) {}
    void operator()(const Permutation& p) {
        if (p == last_) return;
        last_ = p;
        sink_(p);
    }

private:
    Sink sink_;
    Permutation last_;
};

}  // namespace detail

/// Streams the facet-Hamiltonian path from 1..n to n,1..n-1.
inline void stream_fh_path(int n, const Sink& sink) {
    if (n < 1) throw InvalidInput("n must be at least 1");
    detail::Dedup d(sink);
    detail::stream_path(n, false, std::ref(d));
}

/// Streams the facet-Hamiltonian cycle; the closing permutations move n back to
/// the end and stop before repeating 1..n.
inline void stream_fh_cycle(int n, const Sink& sink) {
    if (n < 3) throw InvalidInput("cycle needs n >= 3");
    detail::Dedup d(sink);
    detail::stream_path(n, false, std::ref(d));
    Permutation rho = identity(n - 1);
    for (int k = 2; k <= n - 1; ++k) d(insert_max(rho, k));
}

constexpr int materialize_limit = 12;

inline std::vector<Permutation> perm_fh_path(int n) {
    if (n > materialize_limit) throw InvalidInput("use stream_fh_path beyond n = 12");
    std::vector<Permutation> out;
    stream_fh_path(n, [&](const Permutation& p) { out.push_back(p); });
    return out;
}

inline std::vector<Permutation> perm_fh_cycle(int n) {
    if (n > materialize_limit) throw InvalidInput("use stream_fh_cycle beyond n = 12");
    std::vector<Permutation> out;
    stream_fh_cycle(n, [&](const Permutation& p) { out.push_back(p); });
    return out;
}

/// Position of the adjacent transposition taking a to b, or -1.
inline int adjacent_swap(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) return -1;
    int first = -1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) {
            first = static_cast<int>(i);
            break;
        }
    if (first < 0 || first + 1 >= static_cast<int>(a.size())) return -1;
    if (a[first] != b[first + 1] || a[first + 1] != b[first]) return -1;
    for (std::size_t i = first + 2; i < a.size(); ++i)
        if (a[i] != b[i]) return -1;
    return first;
}

/// Incremental check of the facet-Hamiltonian property on K_n without building
/// the skeleton: consecutive permutations differ by adjacent transpositions and
/// every nonempty proper subset of [n] appears as a prefix in exactly one
/// (cyclic, when closed) interval.
class PrefixIntervalChecker {
public:
    explicit PrefixIntervalChecker(int n) : n_(n), intervals_(std::size_t{1} << n, 0) {
        if (n < 2 || n > 24) throw InvalidInput("prefix bookkeeping supports 2 <= n <= 24");
    }

    void push(const Permutation& p) {
        if (static_cast<int>(p.size()) != n_) {
            ok_ = false;
            return;
        }
        auto masks = prefixes(p);
        if (count_ == 0) {
            first_ = masks;
            first_perm_ = p;
        } else {
            if (adjacent_swap(last_perm_, p) < 0) ok_ = false;
            enter(masks);
        }
        last_ = masks;
        last_perm_ = p;
        ++count_;
    }

    /// Finish the walk. For a closed walk the first permutation's prefixes are
    /// entered when wrapping; for an open walk they always start an interval.
    bool finish(bool closed) {
        if (count_ == 0) return false;
        if (closed) {
            if (count_ < 3 || adjacent_swap(last_perm_, first_perm_) < 0) ok_ = false;
            enter_first(true);
        } else {
            enter_first(false);
        }
        for (std::size_t s = 1; s + 1 < intervals_.size(); ++s)
            if (intervals_[s] != 1) return false;
        return ok_;
    }

    long long length(bool closed) const { return closed ? count_ : count_ - 1; }

private:
    std::vector<std::uint32_t> prefixes(const Permutation& p) const {
        std::vector<std::uint32_t> out;
        std::uint32_t acc = 0;
        for (int i = 0; i + 1 < n_; ++i) {
            acc |= std::uint32_t{1} << (p[i] - 1);
            out.push_back(acc);
        }
        return out;
    }

    static bool has(const std::vector<std::uint32_t>& v, std::uint32_t m) {
        for (auto x : v)
            if (x == m) return true;
        return false;
    }

    void enter(const std::vector<std::uint32_t>& masks) {
        for (auto m : masks)
            if (!has(last_, m)) ++intervals_[m];
    }

    void enter_first(bool closed) {
        for (auto m : first_)
            if (!closed || !has(last_, m)) ++intervals_[m];
    }

    int n_;
    std::vector<std::uint8_t> intervals_;
    std::vector<std::uint32_t> first_, last_;
    Permutation first_perm_, last_perm_;
    long long count_ = 0;
    bool ok_ = true;
};

/// Nested tubing of K_n for a permutation, using labels 1..n.
inline Tubing tubing_of(const Permutation& p) {
    VertexOrder order;
    for (int x : p) order.push_back(x - 1);
    return nested_tubing_from_order(graphs::complete(static_cast<int>(p.size())), order);
}

}  // namespace fhc::perm

#endif  // FHC_PERMUTAHEDRON_HPP
