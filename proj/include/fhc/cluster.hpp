#ifndef FHC_CLUSTER_HPP
#define FHC_CLUSTER_HPP

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <cstdint>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fhc/combinatorics.hpp"
#include "fhc/skeleton.hpp"
#include "fhc/triangulations.hpp"
#include "fhc/verify.hpp"

namespace fhc::cluster {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Exponent = std::vector<int>;

/// Raised when an exchange binomial is not divisible by the old variable.
struct LaurentViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Packed arithmetic for up to 8 variables with exponents in 0..255: the
/// exponent of x_1 sits in the top byte, so numeric order is lex order.
/// Coefficients are int64; any overflow abandons the fast path.
struct PackedTerm {
    std::uint64_t key;
    std::int64_t coef;
};
using Packed = std::vector<PackedTerm>;

struct PackedOverflow {};

class PackedTable {
public:
    explicit PackedTable(std::size_t expect) {
        std::size_t cap = 16;
        while (cap < 2 * expect) cap <<= 1;
        reset(cap);
    }

    /// Slot for key, inserted with value 0 when absent.
    std::int64_t& at(std::uint64_t k, bool& fresh) {
        if (2 * (count_ + 1) > keys_.size()) grow();
        std::size_t i = hash(k) & mask_;
        while (used_[i]) {
            if (keys_[i] == k) {
                fresh = false;
                return vals_[i];
            }
            i = (i + 1) & mask_;
        }
        fresh = true;
        used_[i] = 1;
        keys_[i] = k;
        vals_[i] = 0;
        ++count_;
        return vals_[i];
    }

    Packed nonzero() const {
        Packed out;
        for (std::size_t i = 0; i < keys_.size(); ++i)
            if (used_[i] && vals_[i] != 0) out.push_back({keys_[i], vals_[i]});
        std::sort(out.begin(), out.end(), [](const PackedTerm& a, const PackedTerm& b) { return a.key < b.key; });
        return out;
    }

private:
    static std::uint64_t hash(std::uint64_t k) {
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return k;
    }
    void reset(std::size_t cap) {
        keys_.assign(cap, 0);
        vals_.assign(cap, 0);
        used_.assign(cap, 0);
        mask_ = cap - 1;
        count_ = 0;
    }
    void grow() {
        auto keys = std::move(keys_);
        auto vals = std::move(vals_);
        auto used = std::move(used_);
        reset(keys.size() * 2);
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (used[i]) {
                bool fresh;
                at(keys[i], fresh) = vals[i];
            }
    }

    std::vector<std::uint64_t> keys_;
    std::vector<std::int64_t> vals_;
    std::vector<char> used_;
    std::size_t mask_ = 0, count_ = 0;
};

inline bool packed_ge(std::uint64_t a, std::uint64_t b) {
    for (int i = 0; i < 8; ++i)
        if (((a >> (8 * i)) & 255) < ((b >> (8 * i)) & 255)) return false;
    return true;
}

inline Packed packed_multiply(const Packed& a, const Packed& b) {
    PackedTable t(a.size() + b.size());
    for (const auto& x : a)
        for (const auto& y : b) {
            bool fresh;
            auto& v = t.at(x.key + y.key, fresh);
            std::int64_t p;
            if (__builtin_mul_overflow(x.coef, y.coef, &p) || __builtin_add_overflow(v, p, &v)) throw PackedOverflow{};
        }
    return t.nonzero();
}

/// Exact quotient n / d in Z[x], or nullopt when d does not divide n.
inline std::optional<Packed> packed_divide(const Packed& n, const Packed& d) {
    PackedTable rem(n.size() + 4 * d.size());
    std::priority_queue<std::uint64_t> pending;
    for (const auto& t : n) {
        bool fresh;
        rem.at(t.key, fresh) = t.coef;
        pending.push(t.key);
    }
    const PackedTerm lead = d.back();
    Packed quot;
    while (!pending.empty()) {
        std::uint64_t k = pending.top();
        pending.pop();
        bool fresh;
        std::int64_t& slot = rem.at(k, fresh);
        std::int64_t rc = slot;
        if (rc == 0) continue;
        if (!packed_ge(k, lead.key) || rc % lead.coef != 0) return std::nullopt;
        std::int64_t qc = rc / lead.coef;
        std::uint64_t qe = k - lead.key;
        slot = 0;
        quot.push_back({qe, qc});
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            std::uint64_t kk = qe + d[i].key;
            auto& v = rem.at(kk, fresh);
            std::int64_t p;
            if (__builtin_mul_overflow(qc, d[i].coef, &p) || __builtin_sub_overflow(v, p, &v)) throw PackedOverflow{};
            if (fresh) pending.push(kk);
        }
    }
    std::reverse(quot.begin(), quot.end());
    return quot;
}

}  // namespace detail

/// Laurent polynomial with integer coefficients in x_1..x_n. Terms are kept
/// in lex order; zero coefficients never stored.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(int nvars) : n_(nvars) {}

    static LaurentPoly constant(int nvars, Integer c) {
        LaurentPoly p(nvars);
        if (c != 0) p.terms_[Exponent(nvars, 0)] = std::move(c);
        return p;
    }
    static LaurentPoly one(int nvars) { return constant(nvars, 1); }
    /// x_{i+1} for 0-based i.
    static LaurentPoly variable(int nvars, int i, int power = 1) {
        LaurentPoly p(nvars);
        Exponent e(nvars, 0);
        e.at(i) = power;
        p.terms_[e] = 1;
        return p;
    }
    static LaurentPoly monomial(Exponent e, Integer c = 1) {
        LaurentPoly p(static_cast<int>(e.size()));
        if (c != 0) p.terms_[std::move(e)] = std::move(c);
        return p;
    }

    int num_vars() const { return n_; }
    const std::map<Exponent, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Exponent& e, const Integer& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return LaurentPoly(a.n_);
        if (auto fast = a.packed_product(b)) return *fast;
        LaurentPoly out(a.n_);
        Exponent e(a.n_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    LaurentPoly pow(int k) const {
        if (k < 0) throw ContractViolation("negative power of a Laurent polynomial");
        LaurentPoly out = one(n_), base = *this;
        for (; k; k >>= 1) {
            if (k & 1) out = out * base;
            if (k > 1) base = base * base;
        }
        return out;
    }

    /// Exact quotient in the Laurent ring, or nullopt when it does not exist.
    std::optional<LaurentPoly> divide(const LaurentPoly& d) const {
        check(d);
        if (d.is_zero()) return std::nullopt;
        if (is_zero()) return LaurentPoly(n_);
        // Strip monomial content. The stripped divisor has no variable factor,
        // so divisibility in the Laurent ring equals divisibility in Z[x].
        Exponent dmin = d.min_exponent(), nmin = min_exponent();
        LaurentPoly num = shifted(nmin, -1), den = d.shifted(dmin, -1);
        Exponent shift(n_);
        for (int i = 0; i < n_; ++i) shift[i] = nmin[i] - dmin[i];
        if (num.packable() && den.packable()) {
            try {
                auto q = detail::packed_divide(num.pack(), den.pack());
                if (!q) return std::nullopt;
                return unpack(n_, *q).shifted(shift, 1);
            } catch (const detail::PackedOverflow&) {
            }
        }
        const auto& [lead_e, lead_c] = *den.terms_.rbegin();
        LaurentPoly quot(n_);
        Exponent qe(n_);
        while (!num.is_zero()) {
            const auto& [re, rc] = *num.terms_.rbegin();
            for (int i = 0; i < n_; ++i) {
                qe[i] = re[i] - lead_e[i];
                if (qe[i] < 0) return std::nullopt;
            }
            if (rc % lead_c != 0) return std::nullopt;
            Integer qc = rc / lead_c;
            quot.add_term(qe, qc);
            Exponent e(n_);
            for (const auto& [de, dc] : den.terms_) {
                for (int i = 0; i < n_; ++i) e[i] = de[i] + qe[i];
                num.add_term(e, -qc * dc);
            }
        }
        return quot.shifted(shift, 1);
    }

    Rational evaluate(const std::vector<Rational>& at) const {
        if (static_cast<int>(at.size()) != n_) throw InvalidInput("assignment has the wrong length");
        Rational out = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = Rational(c);
            for (int i = 0; i < n_; ++i) {
                if (e[i] == 0) continue;
                if (at[i] == 0) throw InvalidInput("evaluation at zero divides by zero");
                Rational base = e[i] > 0 ? at[i] : 1 / at[i];
                for (int k = 0; k < std::abs(e[i]); ++k) t *= base;
            }
            out += t;
        }
        return out;
    }

    /// Common denominator monomial: the most negative exponent of each variable.
    Exponent denominator() const {
        Exponent out(n_, 0);
        for (const auto& [e, c] : terms_)
            for (int i = 0; i < n_; ++i) out[i] = std::max(out[i], -e[i]);
        return out;
    }

    /// Readable form such as (x2 + 1)/x1.
    std::string to_string() const {
        if (is_zero()) return "0";
        Exponent den = denominator();
        std::string num;
        int count = 0;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it, ++count) {
            Integer c = it->second;
            std::string mono;
            for (int i = 0; i < n_; ++i) {
                int k = it->first[i] + den[i];
                if (k == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += "x" + std::to_string(i + 1);
                if (k > 1) mono += "^" + std::to_string(k);
            }
            bool neg = c < 0;
            if (neg) c = -c;
            std::string coef = c.str();
            std::string term = mono.empty() ? coef : (c == 1 ? mono : coef + "*" + mono);
            if (num.empty()) num = (neg ? "-" : "") + term;
            else num += (neg ? " - " : " + ") + term;
        }
        std::string d;
        for (int i = 0; i < n_; ++i) {
            if (den[i] == 0) continue;
            if (!d.empty()) d += "*";
            d += "x" + std::to_string(i + 1);
            if (den[i] > 1) d += "^" + std::to_string(den[i]);
        }
        if (d.empty()) return num;
        if (count > 1) num = "(" + num + ")";
        if (d.find('*') != std::string::npos) d = "(" + d + ")";
        return num + "/" + d;
    }

    auto operator<=>(const LaurentPoly&) const = default;
    bool operator==(const LaurentPoly&) const = default;

private:
    void check(const LaurentPoly& o) const {
        if (o.n_ != n_) throw ContractViolation("Laurent polynomials in different rings");
    }

    /// Nonnegative exponents below 256 in at most 8 variables, int64 coefficients.
    bool packable() const {
        if (n_ > 8) return false;
        for (const auto& [e, c] : terms_) {
            for (int x : e)
                if (x < 0 || x > 255) return false;
            if (c > std::numeric_limits<std::int64_t>::max() || c < std::numeric_limits<std::int64_t>::min())
                return false;
        }
        return true;
    }

    detail::Packed pack() const {
        detail::Packed out;
        out.reserve(terms_.size());
        for (const auto& [e, c] : terms_) {
            std::uint64_t k = 0;
            for (int i = 0; i < n_; ++i) k |= static_cast<std::uint64_t>(e[i]) << (8 * (7 - i));
            out.push_back({k, static_cast<std::int64_t>(c)});
        }
        return out;
    }

    static LaurentPoly unpack(int n, const detail::Packed& terms) {
        LaurentPoly out(n);
        Exponent e(n);
        for (const auto& t : terms) {
            for (int i = 0; i < n; ++i) e[i] = static_cast<int>((t.key >> (8 * (7 - i))) & 255);
            out.terms_.emplace_hint(out.terms_.end(), e, Integer(t.coef));
        }
        return out;
    }

    std::optional<LaurentPoly> packed_product(const LaurentPoly& b) const {
        if (n_ > 8) return std::nullopt;
        Exponent amin = min_exponent(), bmin = b.min_exponent();
        LaurentPoly x = shifted(amin, -1), y = b.shifted(bmin, -1);
        Exponent amax = x.max_exponent(), bmax = y.max_exponent();
        for (int i = 0; i < n_; ++i)
            if (amax[i] + bmax[i] > 255) return std::nullopt;
        if (!x.packable() || !y.packable()) return std::nullopt;
        try {
            Exponent shift(n_);
            for (int i = 0; i < n_; ++i) shift[i] = amin[i] + bmin[i];
            return unpack(n_, detail::packed_multiply(x.pack(), y.pack())).shifted(shift, 1);
        } catch (const detail::PackedOverflow&) {
            return std::nullopt;
        }
    }

    Exponent max_exponent() const {
        Exponent out = terms_.begin()->first;
        for (const auto& [e, c] : terms_)
            for (int i = 0; i < n_; ++i) out[i] = std::max(out[i], e[i]);
        return out;
    }

    Exponent min_exponent() const {
        Exponent out = terms_.begin()->first;
        for (const auto& [e, c] : terms_)
            for (int i = 0; i < n_; ++i) out[i] = std::min(out[i], e[i]);
        return out;
    }

    LaurentPoly shifted(const Exponent& by, int sign) const {
        LaurentPoly out(n_);
        for (const auto& [e, c] : terms_) {
            Exponent f = e;
            for (int i = 0; i < n_; ++i) f[i] += sign * by[i];
            out.terms_.emplace_hint(out.terms_.end(), std::move(f), c);
        }
        return out;
    }

    int n_ = 0;
    std::map<Exponent, Integer> terms_;
};

// ---------------------------------------------------------------------------
// Exchange matrices

using ExchangeMatrix = std::vector<std::vector<int>>;

inline int pos(int b) { return std::max(b, 0); }

/// Matrix mutation in direction k (0-based).
inline ExchangeMatrix mutate_matrix(const ExchangeMatrix& b, int k) {
    int n = static_cast<int>(b.size());
    if (k < 0 || k >= n) throw InvalidInput("mutation index out of range");
    ExchangeMatrix out = b;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == k || j == k) out[i][j] = -b[i][j];
            else out[i][j] = b[i][j] + pos(b[i][k]) * pos(b[k][j]) - pos(-b[i][k]) * pos(-b[k][j]);
        }
    return out;
}

/// Positive integers d with d_i b_ij = -d_j b_ji on every connected component, if any.
inline std::optional<std::vector<long long>> skew_symmetrizer(const ExchangeMatrix& b) {
    int n = static_cast<int>(b.size());
    for (const auto& row : b)
        if (static_cast<int>(row.size()) != n) return std::nullopt;
    for (int i = 0; i < n; ++i)
        if (b[i][i] != 0) return std::nullopt;
    // d as rationals p/q propagated along nonzero entries
    std::vector<Rational> d(n, 0);
    for (int s = 0; s < n; ++s) {
        if (d[s] != 0) continue;
        d[s] = 1;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if ((b[i][j] == 0) != (b[j][i] == 0)) return std::nullopt;
                if (b[i][j] == 0) continue;
                // d_j = -d_i b_ij / b_ji
                Rational want = -d[i] * b[i][j] / b[j][i];
                if (want <= 0) return std::nullopt;
                if (d[j] == 0) {
                    d[j] = want;
                    stack.push_back(j);
                } else if (d[j] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    Integer l = 1;
    for (const auto& x : d) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    std::vector<long long> out;
    for (const auto& x : d) {
        Rational scaled = x * Rational(l);
        out.push_back(static_cast<long long>(boost::multiprecision::numerator(scaled)));
    }
    return out;
}

/// Signs with b_ij > 0 only from +1 to -1. Isolated vertices get -1.
inline std::optional<std::vector<int>> bipartite_signs(const ExchangeMatrix& b) {
    int n = static_cast<int>(b.size());
    std::vector<int> eps(n, -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (b[i][j] > 0) eps[i] = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (b[i][j] > 0 && (eps[i] != 1 || eps[j] != -1)) return std::nullopt;
    return eps;
}

// ---------------------------------------------------------------------------
// Seeds

struct Seed {
    std::vector<LaurentPoly> variables;
    ExchangeMatrix matrix;

    int rank() const { return static_cast<int>(variables.size()); }
    auto operator<=>(const Seed&) const = default;
    bool operator==(const Seed&) const = default;
};

inline Seed initial_seed(const ExchangeMatrix& b) {
    Seed s;
    int n = static_cast<int>(b.size());
    for (int i = 0; i < n; ++i) s.variables.push_back(LaurentPoly::variable(n, i));
    s.matrix = b;
    return s;
}

/// The exchange binomial for direction k.
inline LaurentPoly exchange_binomial(const Seed& s, int k) {
    int n = s.rank();
    LaurentPoly plus = LaurentPoly::one(n), minus = LaurentPoly::one(n);
    for (int i = 0; i < n; ++i) {
        int b = s.matrix[i][k];
        if (b > 0) plus = plus * s.variables[i].pow(b);
        if (b < 0) minus = minus * s.variables[i].pow(-b);
    }
    return plus + minus;
}

/// Seed mutation in direction k (0-based).
inline Seed mutate_seed(const Seed& s, int k) {
    if (k < 0 || k >= s.rank()) throw InvalidInput("mutation index out of range");
    auto q = exchange_binomial(s, k).divide(s.variables[k]);
    if (!q) throw LaurentViolation("exchange binomial in direction " + std::to_string(k + 1) + " is not divisible");
    Seed out = s;
    out.variables[k] = std::move(*q);
    out.matrix = mutate_matrix(s.matrix, k);
    return out;
}

// ---------------------------------------------------------------------------
// Finite types

enum class DynkinType { A, B, C, D, E, F, G };

struct DynkinSeedSpec {
    DynkinType type = DynkinType::A;
    int rank = 1;
};

inline std::string type_name(const DynkinSeedSpec& s) {
    const char* names = "ABCDEFG";
    return std::string(1, names[static_cast<int>(s.type)]) + std::to_string(s.rank);
}

/// Parses "A4", "E6", "G2", or a letter with a separate rank.
inline DynkinSeedSpec parse_type(const std::string& letter, int rank = 0) {
    if (letter.empty()) throw InvalidInput("empty Dynkin type");
    std::string l = letter;
    int r = rank;
    if (l.size() > 1) {
        try {
            r = std::stoi(l.substr(1));
        } catch (const std::exception&) {
            throw InvalidInput("bad Dynkin type " + letter);
        }
        l = l.substr(0, 1);
    }
    static const std::string names = "ABCDEFG";
    char c = static_cast<char>(std::toupper(static_cast<unsigned char>(l[0])));
    auto at = names.find(c);
    if (at == std::string::npos) throw InvalidInput("unknown Dynkin type " + letter);
    return {static_cast<DynkinType>(at), r};
}

inline void validate(const DynkinSeedSpec& s) {
    bool ok = false;
    switch (s.type) {
        case DynkinType::A: ok = s.rank >= 1; break;
        case DynkinType::B:
        case DynkinType::C: ok = s.rank >= 2; break;
        case DynkinType::D: ok = s.rank >= 3; break;
        case DynkinType::E: ok = s.rank >= 6 && s.rank <= 8; break;
        case DynkinType::F: ok = s.rank == 4; break;
        case DynkinType::G: ok = s.rank == 2; break;
    }
    if (!ok) throw InvalidInput("invalid rank for type " + type_name(s));
}

/// Cartan matrix, Bourbaki numbering. B_n has its short root last; C_n is the transpose.
inline std::vector<std::vector<int>> cartan_matrix(const DynkinSeedSpec& s) {
    validate(s);
    int n = s.rank;
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    auto link = [&](int i, int j) { a[i - 1][j - 1] = a[j - 1][i - 1] = -1; };
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    switch (s.type) {
        case DynkinType::A:
            for (int i = 1; i < n; ++i) link(i, i + 1);
            break;
        case DynkinType::B:
        case DynkinType::C:
            for (int i = 1; i < n; ++i) link(i, i + 1);
            if (s.type == DynkinType::B) a[n - 2][n - 1] = -2;
            else a[n - 1][n - 2] = -2;
            break;
        case DynkinType::D:
            for (int i = 1; i < n - 1; ++i) link(i, i + 1);
            link(n - 2, n);
            break;
        case DynkinType::E:
            link(1, 3);
            link(2, 4);
            for (int i = 3; i < n; ++i) link(i, i + 1);
            break;
        case DynkinType::F:
            link(1, 2);
            link(2, 3);
            link(3, 4);
            a[1][2] = -2;
            break;
        case DynkinType::G:
            link(1, 2);
            a[1][0] = -3;
            break;
    }
    return a;
}

inline int coxeter_number(const DynkinSeedSpec& s) {
    validate(s);
    switch (s.type) {
        case DynkinType::A: return s.rank + 1;
        case DynkinType::B:
        case DynkinType::C: return 2 * s.rank;
        case DynkinType::D: return 2 * s.rank - 2;
        case DynkinType::E: return s.rank == 6 ? 12 : s.rank == 7 ? 18 : 30;
        case DynkinType::F: return 12;
        case DynkinType::G: return 6;
    }
    return 0;
}

/// Alternating signs along the (tree-shaped) Dynkin diagram; vertex 1 is a sink.
inline std::vector<int> dynkin_signs(const std::vector<std::vector<int>>& a) {
    int n = static_cast<int>(a.size());
    std::vector<int> eps(n, 0);
    for (int s = 0; s < n; ++s) {
        if (eps[s]) continue;
        eps[s] = -1;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j)
                if (j != i && a[i][j] != 0 && !eps[j]) {
                    eps[j] = -eps[i];
                    stack.push_back(j);
                }
        }
    }
    return eps;
}

/// Bipartite exchange matrix b_ij = -eps(i) a_ij off the diagonal.
inline Seed dynkin_seed(const DynkinSeedSpec& s) {
    auto a = cartan_matrix(s);
    auto eps = dynkin_signs(a);
    int n = s.rank;
    ExchangeMatrix b(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) b[i][j] = -eps[i] * a[i][j];
    return initial_seed(b);
}

// ---------------------------------------------------------------------------
// Bipartite belts

struct Belt {
    std::vector<int> signs;
    /// seeds[t] is S_t for t = 0..steps.
    std::vector<Seed> seeds;
    /// changed[t] lists the directions mutated to get from S_{t-1} to S_t.
    std::vector<std::vector<int>> changed;
};

/// Directions of one sign, in increasing order.
inline std::vector<int> side(const std::vector<int>& signs, int sign) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(signs.size()); ++i)
        if (signs[i] == sign) out.push_back(i);
    return out;
}

inline Belt bipartite_belt(const Seed& s0, int steps) {
    if (steps < 1) throw InvalidInput("steps must be at least 1");
    auto eps = bipartite_signs(s0.matrix);
    if (!eps) throw InvalidInput("seed is not bipartite");
    Belt out;
    out.signs = *eps;
    out.seeds.push_back(s0);
    out.changed.emplace_back();
    for (int t = 1; t <= steps; ++t) {
        // mu_- first, then alternate
        int sign = t % 2 == 1 ? -1 : 1;
        Seed s = out.seeds.back();
        auto dirs = side(out.signs, sign);
        for (int k : dirs) s = mutate_seed(s, k);
        out.seeds.push_back(std::move(s));
        out.changed.push_back(dirs);
    }
    return out;
}

inline Belt bipartite_belt(const DynkinSeedSpec& spec, int steps) { return bipartite_belt(dynkin_seed(spec), steps); }

/// Smallest even p > 0 with S_p = S_0 among the computed seeds. Odd shifts
/// would swap the roles of mu_- and mu_+, so only even ones are periods.
inline std::optional<int> belt_period(const Belt& b) {
    for (std::size_t p = 2; p < b.seeds.size(); p += 2)
        if (b.seeds[p] == b.seeds[0]) return static_cast<int>(p);
    return std::nullopt;
}

struct VariableSet {
    bool complete = false;
    std::vector<LaurentPoly> variables;
};

/// Distinct variables over one period; incomplete when the belt has not closed.
inline VariableSet distinct_cluster_variables(const Belt& b) {
    VariableSet out;
    auto p = belt_period(b);
    int upto = p ? *p : static_cast<int>(b.seeds.size()) - 1;
    std::set<LaurentPoly> seen;
    for (int t = 0; t <= upto; ++t)
        for (const auto& v : b.seeds[t].variables)
            if (seen.insert(v).second) out.variables.push_back(v);
    out.complete = p.has_value();
    return out;
}

/// Frieze columns m = -1..last: column m holds x_{m,j} for eps(j) = (-1)^m.
struct Frieze {
    std::vector<int> signs;
    int first = -1;
    /// values[m - first][j], empty optional where node j is not in column m
    std::vector<std::vector<std::optional<Rational>>> values;
};

inline int column_sign(int m) { return (m % 2 == 0) ? 1 : -1; }

/// Values of the belt under an assignment of the initial variables, by running
/// the exchange relation on numbers.
inline Frieze evaluate_frieze(const DynkinSeedSpec& spec, const std::vector<Rational>& assignment, int last) {
    Seed s0 = dynkin_seed(spec);
    int n = s0.rank();
    if (static_cast<int>(assignment.size()) != n) throw InvalidInput("assignment has the wrong length");
    for (const auto& x : assignment)
        if (x == 0) throw InvalidInput("assignment values must be nonzero");
    auto eps = *bipartite_signs(s0.matrix);
    Frieze f;
    f.signs = eps;
    std::vector<Rational> cur = assignment;
    ExchangeMatrix b = s0.matrix;
    auto record = [&](int) {
        std::vector<std::optional<Rational>> col(n);
        int m = f.first + static_cast<int>(f.values.size());
        for (int j = 0; j < n; ++j)
            if (eps[j] == column_sign(m)) col[j] = cur[j];
        f.values.push_back(std::move(col));
    };
    record(-1);
    record(0);
    for (int t = 1; t <= last; ++t) {
        int sign = t % 2 == 1 ? -1 : 1;
        for (int k : side(eps, sign)) {
            Rational plus = 1, minus = 1;
            for (int i = 0; i < n; ++i) {
                for (int e = 0; e < b[i][k]; ++e) plus *= cur[i];
                for (int e = 0; e < -b[i][k]; ++e) minus *= cur[i];
            }
            if (cur[k] == 0) throw InvalidInput("frieze evaluation hit a zero denominator");
            cur[k] = (plus + minus) / cur[k];
            b = mutate_matrix(b, k);
        }
        record(t);
    }
    return f;
}

inline Frieze evaluate_frieze(const DynkinSeedSpec& spec, int last) {
    return evaluate_frieze(spec, std::vector<Rational>(spec.rank, Rational(1)), last);
}

/// Aligned text table, one row per node.
inline std::string frieze_text(const Frieze& f) {
    std::size_t width = 1;
    for (const auto& col : f.values)
        for (const auto& v : col)
            if (v) width = std::max(width, v->str().size());
    std::string out;
    int n = static_cast<int>(f.signs.size());
    for (int j = 0; j < n; ++j) {
        std::string row;
        for (const auto& col : f.values) {
            std::string cell = col[j] ? col[j]->str() : "";
            row += std::string(width + 1 - cell.size(), ' ') + cell;
        }
        while (!row.empty() && row.back() == ' ') row.pop_back();
        out += row + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cluster complex and belt cycles

/// All clusters reachable by mutation, as sets of variable ids.
struct ClusterComplex {
    std::vector<LaurentPoly> variables;
    std::map<LaurentPoly, int> variable_id;
    std::vector<std::vector<int>> clusters;
    std::map<std::vector<int>, int> cluster_id;
    FacetedSkeleton skeleton;

    int id_of(const LaurentPoly& v) {
        auto [it, fresh] = variable_id.try_emplace(v, static_cast<int>(variables.size()));
        if (fresh) variables.push_back(v);
        return it->second;
    }

    std::optional<int> find_cluster(const std::vector<LaurentPoly>& vars) const {
        std::vector<int> ids;
        for (const auto& v : vars) {
            auto it = variable_id.find(v);
            if (it == variable_id.end()) return std::nullopt;
            ids.push_back(it->second);
        }
        std::sort(ids.begin(), ids.end());
        auto it = cluster_id.find(ids);
        if (it == cluster_id.end()) return std::nullopt;
        return it->second;
    }
};

inline ClusterComplex cluster_complex(const Seed& s0, std::size_t max_clusters = 200000) {
    ClusterComplex cc;
    auto key = [&](const Seed& s) {
        std::vector<int> ids;
        for (const auto& v : s.variables) ids.push_back(cc.id_of(v));
        std::sort(ids.begin(), ids.end());
        return ids;
    };
    std::vector<Seed> seeds{s0};
    cc.cluster_id[key(s0)] = 0;
    cc.clusters.push_back(key(s0));
    std::vector<std::pair<int, int>> edges;
    for (std::size_t at = 0; at < seeds.size(); ++at) {
        for (int k = 0; k < s0.rank(); ++k) {
            Seed next = mutate_seed(seeds[at], k);
            auto ids = key(next);
            auto [it, fresh] = cc.cluster_id.try_emplace(ids, static_cast<int>(cc.clusters.size()));
            if (fresh) {
                if (cc.clusters.size() >= max_clusters) throw InvalidInput("cluster complex exceeds the size limit");
                cc.clusters.push_back(ids);
                seeds.push_back(std::move(next));
            }
            if (static_cast<int>(at) < it->second) edges.emplace_back(static_cast<int>(at), it->second);
        }
    }
    for (std::size_t c = 0; c < cc.clusters.size(); ++c) cc.skeleton.add_vertex("c" + std::to_string(c));
    for (auto [a, b] : edges) cc.skeleton.add_edge(a, b);
    std::vector<std::vector<int>> members(cc.variables.size());
    for (std::size_t c = 0; c < cc.clusters.size(); ++c)
        for (int v : cc.clusters[c]) members[v].push_back(static_cast<int>(c));
    for (std::size_t v = 0; v < cc.variables.size(); ++v)
        cc.skeleton.add_facet("v" + std::to_string(v), members[v]);
    return cc;
}

inline ClusterComplex cluster_complex(const DynkinSeedSpec& spec) { return cluster_complex(dynkin_seed(spec)); }

/// Single-mutation walk along the belt: mu_- direction by direction, then
/// mu_+, and so on, until the unordered cluster returns to the start.
struct BeltCycle {
    /// clusters[i] is the seed after i single mutations; the last one flips back to the first
    std::vector<Seed> seeds;
    std::vector<int> directions;
};

inline BeltCycle extract_fh_cycle_from_belt(const Seed& s0, int max_half_steps) {
    auto eps = bipartite_signs(s0.matrix);
    if (!eps) throw InvalidInput("seed is not bipartite");
    auto unordered = [](const Seed& s) {
        auto v = s.variables;
        std::sort(v.begin(), v.end());
        return v;
    };
    auto start = unordered(s0);
    BeltCycle out;
    Seed cur = s0;
    out.seeds.push_back(cur);
    for (int t = 1; t <= max_half_steps; ++t) {
        int sign = t % 2 == 1 ? -1 : 1;
        for (int k : side(*eps, sign)) {
            cur = mutate_seed(cur, k);
            out.seeds.push_back(cur);
            out.directions.push_back(k);
        }
        if (unordered(cur) == start) {
            out.seeds.pop_back();
            return out;
        }
    }
    throw InvalidInput("belt did not return within the step bound");
}

inline BeltCycle extract_fh_cycle_from_belt(const DynkinSeedSpec& spec) {
    return extract_fh_cycle_from_belt(dynkin_seed(spec), 2 * (coxeter_number(spec) + 2));
}

inline Walk belt_walk(const ClusterComplex& cc, const BeltCycle& c) {
    Walk w;
    w.closed = true;
    for (const auto& s : c.seeds) w.vertices.push_back(cc.find_cluster(s.variables).value_or(-1));
    return w;
}

/// Type A_r belt cycle drawn on the (r+3)-gon: x_1..x_r sit on the zigzag
/// P_0 u P_1 in path order and a mutation in direction k flips the diagonal
/// carrying x_k. boundaries[i] indexes the triangulation after i half steps.
struct TriangulatedBelt {
    std::vector<tri::PolygonTriangulation> triangulations;
    std::vector<std::size_t> boundaries;
};

inline TriangulatedBelt type_a_belt_triangulations(int rank) {
    if (rank < 1) throw InvalidInput("rank must be positive");
    int m = rank + 3;
    DynkinSeedSpec spec{DynkinType::A, rank};
    auto cyc = extract_fh_cycle_from_belt(spec);
    auto z = tri::detail::zigzag(m, 0);
    auto shares = [](const tri::Diagonal& d, const tri::Diagonal& e) {
        return d != e && (e.a == d.a || e.a == d.b || e.b == d.a || e.b == d.b);
    };
    std::vector<tri::Diagonal> path;
    for (const auto& d : z.diagonals) {
        int deg = 0;
        for (const auto& e : z.diagonals) deg += shares(d, e);
        if (deg <= 1) {
            path = {d};
            break;
        }
    }
    while (path.size() < z.diagonals.size()) {
        std::size_t before = path.size();
        for (const auto& e : z.diagonals)
            if (shares(path.back(), e) && std::find(path.begin(), path.end(), e) == path.end()) {
                path.push_back(e);
                break;
            }
        if (path.size() == before) throw std::logic_error("zigzag is not a path of diagonals");
    }
    TriangulatedBelt out;
    out.triangulations.push_back(z);
    out.boundaries.push_back(0);
    auto eps = *bipartite_signs(cyc.seeds[0].matrix);
    std::size_t at = 0;
    for (int half = 0; at < cyc.directions.size(); ++half) {
        for (int k : side(eps, half % 2 == 0 ? -1 : 1)) {
            if (cyc.directions.at(at) != k) throw std::logic_error("belt cycle left the half-step order");
            auto [next, fresh] = out.triangulations.back().flip(path[k]);
            path[k] = fresh;
            out.triangulations.push_back(next);
            ++at;
        }
        out.boundaries.push_back(out.triangulations.size() - 1);
    }
    if (out.triangulations.back() != out.triangulations.front()) throw std::logic_error("belt cycle does not close");
    out.triangulations.pop_back();
    out.boundaries.pop_back();
    return out;
}

/// Number of cluster variables of a finite type: rank (h + 2) / 2.
inline int cluster_variable_count(const DynkinSeedSpec& spec) { return spec.rank * (coxeter_number(spec) + 2) / 2; }

}  // namespace fhc::cluster

#endif  // FHC_CLUSTER_HPP
