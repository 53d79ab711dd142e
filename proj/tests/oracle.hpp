// Independent reference computations used to derive frozen test values.
// Everything here works on plain strings and switch tables and shares no
// code with the library beyond the data types.
#ifndef TTLAB_TESTS_ORACLE_HPP
#define TTLAB_TESTS_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ttlab/track.hpp"

namespace oracle {

inline std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;)
        out.push_back(t);
    return out;
}

inline std::string invert_token(const std::string& t) { return t[0] == '-' ? t.substr(1) : "-" + t; }

inline std::vector<std::string> free_reduce(const std::vector<std::string>& w) {
    std::vector<std::string> st;
    for (const auto& t : w) {
        if (!st.empty() && st.back() == invert_token(t))
            st.pop_back();
        else
            st.push_back(t);
    }
    return st;
}

using StringMap = std::map<std::string, std::string>;

// outer after inner, by string substitution and reduction.
inline StringMap compose(const StringMap& outer, const StringMap& inner) {
    StringMap out;
    for (const auto& [e, w] : inner) {
        std::vector<std::string> acc;
        for (const auto& t : tokens(w)) {
            const bool rev = t[0] == '-';
            auto img = tokens(outer.at(rev ? t.substr(1) : t));
            if (rev) {
                std::reverse(img.begin(), img.end());
                for (auto& x : img)
                    x = invert_token(x);
            }
            acc.insert(acc.end(), img.begin(), img.end());
        }
        std::string s;
        for (const auto& t : free_reduce(acc))
            s += (s.empty() ? "" : " ") + t;
        out[e] = s;
    }
    return out;
}

inline std::vector<std::vector<long long>> count_matrix(const StringMap& m) {
    std::vector<std::string> labels;
    for (const auto& kv : m)
        labels.push_back(kv.first);
    std::vector<std::vector<long long>> M(labels.size(), std::vector<long long>(labels.size(), 0));
    for (std::size_t r = 0; r < labels.size(); ++r)
        for (const auto& t : tokens(m.at(labels[r]))) {
            const auto name = t[0] == '-' ? t.substr(1) : t;
            const auto c = std::find(labels.begin(), labels.end(), name) - labels.begin();
            ++M[r][static_cast<std::size_t>(c)];
        }
    return M;
}

// Perron root via power iteration on M + I (aperiodic for any irreducible M).
inline double perron_root(const std::vector<std::vector<long long>>& M) {
    const std::size_t n = M.size();
    std::vector<double> v(n, 1.0);
    double lambda = 0;
    for (int it = 0; it < 20000; ++it) {
        std::vector<double> w(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = v[i];
            for (std::size_t j = 0; j < n; ++j)
                w[i] += static_cast<double>(M[i][j]) * v[j];
        }
        double norm = 0;
        for (double x : w)
            norm = std::max(norm, x);
        lambda = norm;
        for (auto& x : w)
            x /= norm;
        v = w;
    }
    return lambda - 1.0;
}

struct Curve {
    std::vector<std::string> word;
    int cusps = 0;
};

// Boundary tracing straight from the switch table: the cyclic order at a
// switch is sideA then sideB backwards, and each step leaves through the end
// that follows the arrival end, crossing to the far end of that edge.
inline std::vector<Curve> boundaries(const ttlab::TrainTrack& t) {
    struct Pos {
        std::size_t sw, idx;
        bool sideA;
    };
    std::map<std::pair<int, int>, Pos> where;  // (edge, terminal?) -> position in cyclic list
    std::vector<std::vector<std::pair<int, int>>> cyc;
    for (std::size_t s = 0; s < t.switches().size(); ++s) {
        const auto& sw = t.switches()[s];
        std::vector<std::pair<int, int>> c;
        for (const auto& e : sw.sideA)
            c.push_back({e.edge, e.end == ttlab::End::Terminal});
        for (auto it = sw.sideB.rbegin(); it != sw.sideB.rend(); ++it)
            c.push_back({it->edge, it->end == ttlab::End::Terminal});
        for (std::size_t k = 0; k < c.size(); ++k)
            where[c[k]] = {s, k, k < sw.sideA.size()};
        cyc.push_back(c);
    }
    std::set<std::pair<int, int>> used;
    std::vector<Curve> out;
    for (const auto& [start, pos0] : where) {
        if (used.count(start))
            continue;
        Curve cur;
        auto arr = start;
        while (!used.count(arr)) {
            used.insert(arr);
            const auto& here = where.at(arr);
            const auto& c = cyc[here.sw];
            const auto nxt = c[(here.idx + 1) % c.size()];
            if (where.at(nxt).sideA == here.sideA)
                ++cur.cusps;
            // Leaving through nxt means traversing its edge away from this switch.
            const auto name = t.alphabet().name(nxt.first);
            cur.word.push_back(nxt.second ? "-" + name : name);
            arr = {nxt.first, 1 - nxt.second};
        }
        out.push_back(cur);
    }
    return out;
}

inline std::string canonical_cyclic(std::vector<std::string> w) {
    std::string best;
    for (int inv = 0; inv < 2; ++inv) {
        for (std::size_t r = 0; r < w.size(); ++r) {
            std::string s;
            for (std::size_t k = 0; k < w.size(); ++k)
                s += w[(r + k) % w.size()] + " ";
            if (best.empty() || s < best)
                best = s;
        }
        std::reverse(w.begin(), w.end());
        for (auto& x : w)
            x = invert_token(x);
    }
    return best;
}

} // namespace oracle

#endif
