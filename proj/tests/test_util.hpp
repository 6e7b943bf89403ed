#pragma once

// Independent reference implementations used to cross-check the library:
// letter-by-letter free reduction, a recursive Fox derivative, and a
// cofactor-expansion determinant. Deliberately naive.

#include <l2alex/groupring.hpp>
#include <l2alex/laurent.hpp>
#include <random>

namespace oracle {

using namespace l2alex;

using Letter = std::pair<int, int>; // (generator, +1/-1)

inline std::vector<Letter> word_to_letters(const Word& w) {
    std::vector<Letter> out;
    for (auto& [g, e] : w.syl) {
        int sgn = e > 0 ? 1 : -1;
        for (std::int64_t i = 0; i < (e > 0 ? e : -e); ++i) out.push_back({g, sgn});
    }
    return out;
}

// repeatedly delete adjacent inverse pairs until none remain
inline std::vector<Letter> free_reduce(std::vector<Letter> v) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            if (v[i].first == v[i + 1].first && v[i].second == -v[i + 1].second) {
                v.erase(v.begin() + i, v.begin() + i + 2);
                changed = true;
                break;
            }
        }
    }
    return v;
}

inline Word letters_to_word(const std::vector<Letter>& v) {
    Word w;
    for (auto& [g, s] : v) w.push_syllable(g, s);
    return w;
}

// d(x v)/dg = dx/dg + x dv/dg with dx/dg = 1 if x = g, -x^-1 if x = g^-1
inline GroupRingElem naive_fox(const std::vector<Letter>& letters, int gen) {
    GroupRingElem acc = gr_zero();
    Word prefix = word_one();
    for (auto& [g, s] : letters) {
        if (g == gen) {
            if (s > 0) {
                acc.add_term(prefix, Rat(1));
            } else {
                Word m = word_mul(prefix, word_gen(g, -1));
                acc.add_term(m, Rat(-1));
            }
        }
        prefix = word_mul(prefix, word_gen(g, s));
    }
    return acc;
}

inline QPoly naive_det(const QMat& M) {
    if (M.rows != M.cols) throw std::invalid_argument("naive_det: square only");
    int n = M.rows;
    if (n == 0) return lp_const(M.nvars, Rat(1));
    if (n == 1) return M.at(0, 0);
    QPoly acc(M.nvars);
    for (int j = 0; j < n; ++j) {
        QMat sub(n - 1, n - 1, M.nvars);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(i - 1, cc++) = M.at(i, c);
            }
        }
        QPoly term = lp_mul(M.at(0, j), naive_det(sub));
        if (j % 2) term = lp_neg(term);
        acc = lp_add(acc, term);
    }
    return acc;
}

inline Word random_word(std::mt19937& rng, int ngens, int len) {
    std::uniform_int_distribution<int> gen(0, ngens - 1), sgn(0, 1);
    Word w;
    for (int i = 0; i < len; ++i) w.push_syllable(gen(rng), sgn(rng) ? 1 : -1);
    return w;
}

inline QPoly random_poly(std::mt19937& rng, int nvars, int terms, std::int64_t emax,
                         int cmax) {
    std::uniform_int_distribution<std::int64_t> e(-emax, emax);
    std::uniform_int_distribution<int> c(-cmax, cmax);
    QPoly p(nvars);
    for (int i = 0; i < terms; ++i) {
        Expo ex(nvars);
        for (auto& x : ex) x = e(rng);
        p.add_term(ex, Rat(c(rng)));
    }
    return p;
}

} // namespace oracle
