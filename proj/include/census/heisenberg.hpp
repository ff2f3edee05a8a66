// Discrete Heisenberg groups over a free abelian group A of rank 2k with
// an integral symplectic form: group operations, conjugation, and exact
// conjugacy-class counting in the word metric by breadth-first search.
// For k = 1 with the standard generators the search runs over a dense
// coordinate box; general ranks fall back to a hashed frontier.
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace census {

struct HeisenbergElt {
    std::vector<std::int64_t> a;
    std::int64_t z = 0;

    friend bool operator==(const HeisenbergElt& x, const HeisenbergElt& y) {
        return x.z == y.z && x.a == y.a;
    }
};

struct HeisenbergEltHash {
    std::size_t operator()(const HeisenbergElt& e) const {
        std::size_t h = std::hash<std::int64_t>{}(e.z);
        for (std::int64_t v : e.a) h = h * 0x9e3779b97f4a7c15ull + std::hash<std::int64_t>{}(v);
        return h;
    }
};

struct HeisenbergSpec {
    int rank_k = 1;
    // 2k x 2k integer antisymmetric form
    std::vector<std::vector<std::int64_t>> form;

    /// Standard spec: form <u, v> = sum_i (u_i v_{k+i} - u_{k+i} v_i).
    static HeisenbergSpec standard(int k) {
        if (k < 1) throw std::invalid_argument("Heisenberg rank must be at least 1");
        HeisenbergSpec s;
        s.rank_k = k;
        s.form.assign(2 * k, std::vector<std::int64_t>(2 * k, 0));
        for (int i = 0; i < k; ++i) {
            s.form[i][k + i] = 1;
            s.form[k + i][i] = -1;
        }
        return s;
    }

    std::int64_t pair(const std::vector<std::int64_t>& u, const std::vector<std::int64_t>& v) const {
        std::size_t n = form.size();
        if (u.size() != n || v.size() != n) throw std::invalid_argument("Heisenberg rank mismatch");
        std::int64_t s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (u[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) s += u[i] * form[i][j] * v[j];
        }
        return s;
    }

    /// (a,z)(a',z') = (a + a', z + z' + <a, a'>)
    HeisenbergElt multiply(const HeisenbergElt& x, const HeisenbergElt& y) const {
        HeisenbergElt r;
        r.z = x.z + y.z + pair(x.a, y.a);  // also validates the ranks
        r.a.resize(x.a.size());
        for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
        return r;
    }

    HeisenbergElt invert(const HeisenbergElt& x) const {
        HeisenbergElt r;
        r.a.resize(x.a.size());
        for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = -x.a[i];
        r.z = -x.z;
        return r;
    }

    /// (a,z)(a0,z0)(a,z)^{-1} = (a0, z0 + 2 <a, a0>)
    HeisenbergElt conjugate(const HeisenbergElt& x, const HeisenbergElt& g0) const {
        HeisenbergElt r = g0;
        r.z = g0.z + 2 * pair(x.a, g0.a);
        return r;
    }

    HeisenbergElt identity() const { return {std::vector<std::int64_t>(form.size(), 0), 0}; }

    /// Standard generators (e_i, 0).
    std::vector<HeisenbergElt> generators() const {
        std::vector<HeisenbergElt> gens;
        for (std::size_t i = 0; i < form.size(); ++i) {
            HeisenbergElt g = identity();
            g.a[i] = 1;
            gens.push_back(g);
        }
        return gens;
    }
};

namespace detail {

/// gcd of {<a, a0> : a in A}; the center offsets reachable by conjugation
/// are exactly the multiples of 2 * this.
inline std::int64_t conjugation_stride(const HeisenbergSpec& spec,
                                       const std::vector<std::int64_t>& a0) {
    std::int64_t g = 0;
    for (std::size_t i = 0; i < spec.form.size(); ++i) {
        std::vector<std::int64_t> e(spec.form.size(), 0);
        e[i] = 1;
        g = std::gcd(g, spec.pair(e, a0));
    }
    return g;
}

inline bool in_class(const HeisenbergElt& e, const HeisenbergElt& g0, std::int64_t stride2) {
    if (stride2 == 0) return e.a == g0.a && e.z == g0.z;
    return e.a == g0.a && (e.z - g0.z) % stride2 == 0;
}

// Dense BFS for rank k = 1 with the standard form: coordinates fit in a
// flat visited array of size (2n+1)^2 (2 zb + 1).
inline std::vector<std::uint64_t> conj_count_dense_k1(const HeisenbergSpec& spec,
                                                      const HeisenbergElt& g0, int n) {
    const std::int64_t zb = static_cast<std::int64_t>(n) * (n - 1) / 2 + 1;
    const std::int64_t aw = 2 * n + 1, zw = 2 * zb + 1;
    std::vector<std::uint8_t> visited(static_cast<std::size_t>(aw) * aw * zw, 0);
    auto index = [&](std::int64_t a1, std::int64_t a2, std::int64_t z) {
        return (static_cast<std::size_t>(a1 + n) * aw + static_cast<std::size_t>(a2 + n)) * zw +
               static_cast<std::size_t>(z + zb);
    };
    std::int64_t stride2 = 2 * conjugation_stride(spec, g0.a);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);

    struct Node {
        std::int32_t a1, a2;
        std::int64_t z;
    };
    std::vector<Node> frontier{{0, 0, 0}}, next;
    visited[index(0, 0, 0)] = 1;
    if (in_class({{0, 0}, 0}, g0, stride2)) counts[0] = 1;

    for (int depth = 1; depth <= n; ++depth) {
        next.clear();
        for (const Node& u : frontier) {
            const Node children[4] = {
                {static_cast<std::int32_t>(u.a1 + 1), u.a2, u.z - u.a2},
                {static_cast<std::int32_t>(u.a1 - 1), u.a2, u.z + u.a2},
                {u.a1, static_cast<std::int32_t>(u.a2 + 1), u.z + u.a1},
                {u.a1, static_cast<std::int32_t>(u.a2 - 1), u.z - u.a1},
            };
            for (const Node& v : children) {
                if (std::abs(v.a1) > n || std::abs(v.a2) > n || std::abs(v.z) > zb) continue;
                std::uint8_t& seen = visited[index(v.a1, v.a2, v.z)];
                if (seen) continue;
                seen = 1;
                next.push_back(v);
                if (v.a1 == g0.a[0] && v.a2 == g0.a[1] &&
                    (stride2 == 0 ? v.z == g0.z : (v.z - g0.z) % stride2 == 0))
                    counts[depth] += 1;
            }
        }
        frontier.swap(next);
        counts[depth] += counts[depth - 1];
    }
    return counts;
}

inline std::vector<std::uint64_t> conj_count_hashed(const HeisenbergSpec& spec,
                                                    const HeisenbergElt& g0, int n) {
    std::int64_t stride2 = 2 * conjugation_stride(spec, g0.a);
    std::unordered_map<HeisenbergElt, int, HeisenbergEltHash> depth;
    std::vector<HeisenbergElt> frontier{spec.identity()}, next;
    depth.emplace(spec.identity(), 0);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
    if (in_class(spec.identity(), g0, stride2)) counts[0] = 1;
    std::vector<HeisenbergElt> moves;
    for (const HeisenbergElt& g : spec.generators()) {
        moves.push_back(g);
        moves.push_back(spec.invert(g));
    }
    for (int d = 1; d <= n; ++d) {
        next.clear();
        for (const HeisenbergElt& u : frontier) {
            for (const HeisenbergElt& m : moves) {
                HeisenbergElt v = spec.multiply(u, m);
                if (!depth.emplace(v, d).second) continue;
                next.push_back(v);
                if (in_class(v, g0, stride2)) counts[d] += 1;
            }
        }
        frontier.swap(next);
        counts[d] += counts[d - 1];
    }
    return counts;
}

}  // namespace detail

/// Exact counts of the conjugacy class of g0 in word-metric balls of radius
/// 0..n, as one series. g0 must be noncentral (a != 0), otherwise its class
/// is the singleton {g0}.
inline std::vector<std::uint64_t> heis_conj_count_series(const HeisenbergSpec& spec,
                                                         const HeisenbergElt& g0, int n) {
    if (g0.a.size() != spec.form.size()) throw std::invalid_argument("Heisenberg rank mismatch");
    bool central = true;
    for (std::int64_t v : g0.a) central = central && v == 0;
    if (central) throw std::invalid_argument("conjugacy class of a central element is a singleton");
    if (n < 0) throw std::invalid_argument("radius must be nonnegative");
    bool standard_k1 = spec.rank_k == 1 && spec.form == HeisenbergSpec::standard(1).form;
    return standard_k1 ? detail::conj_count_dense_k1(spec, g0, n)
                       : detail::conj_count_hashed(spec, g0, n);
}

inline std::uint64_t heis_conj_count(const HeisenbergSpec& spec, const HeisenbergElt& g0, int n) {
    return heis_conj_count_series(spec, g0, n).back();
}

/// Word lengths of every element in the radius-n ball (hashed BFS); used by
/// tests for the inversion symmetry of the word metric.
inline std::unordered_map<HeisenbergElt, int, HeisenbergEltHash> heis_ball_word_lengths(
    const HeisenbergSpec& spec, int n) {
    std::unordered_map<HeisenbergElt, int, HeisenbergEltHash> depth;
    std::vector<HeisenbergElt> frontier{spec.identity()}, next;
    depth.emplace(spec.identity(), 0);
    std::vector<HeisenbergElt> moves;
    for (const HeisenbergElt& g : spec.generators()) {
        moves.push_back(g);
        moves.push_back(spec.invert(g));
    }
    for (int d = 1; d <= n; ++d) {
        next.clear();
        for (const HeisenbergElt& u : frontier)
            for (const HeisenbergElt& m : moves) {
                HeisenbergElt v = spec.multiply(u, m);
                if (depth.emplace(v, d).second) next.push_back(v);
            }
        frontier.swap(next);
    }
    return depth;
}

}  // namespace census
