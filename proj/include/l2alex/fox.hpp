#pragma once

// Group presentations, planar-diagram codes, Wirtinger and torus-knot
// presentations, Fox derivatives, and the mapping-torus boundary matrices.

#include <l2alex/laurent.hpp>

#include <array>
#include <functional>
#include <numeric>

namespace l2alex {

enum class PresentationKind { generic, wirtinger, torus };

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;
    HomToZk phi; // marked homomorphism to Z^k; relators checked to die
    PresentationKind kind = PresentationKind::generic;
    int torus_p = 0, torus_q = 0; // set for kind == torus

    int deficiency() const { return (int)generators.size() - (int)relators.size(); }

    std::map<std::string, int> name_table() const {
        std::map<std::string, int> t;
        for (int i = 0; i < (int)generators.size(); ++i) t.emplace(generators[i], i);
        return t;
    }

    void validate() const {
        if (generators.empty()) throw ParseError("presentation needs at least one generator");
        if ((int)phi.images.size() != (int)generators.size())
            throw ParseError("phi must assign a vector to every generator");
        for (auto& v : phi.images)
            if ((int)v.size() != phi.rank) throw ParseError("phi image ranks disagree");
        check_hom(phi, relators);
    }
};

// Crossing tuple (i, j, k, l): edge labels counterclockwise starting at the
// incoming under-strand. Standard tabulation numbering: the under-strand
// leaves at k = i+1 and the over-strand pair {j, l} differs by one, all
// cyclically mod 2n.
struct PDCode {
    std::vector<std::array<std::int64_t, 4>> crossings;
};

struct FreeGroupEndo {
    std::vector<std::string> generators;
    std::vector<Word> images; // images[i] = f(g_i)

    void validate() const {
        if (generators.empty()) throw ParseError("endomorphism needs at least one generator");
        if (images.size() != generators.size())
            throw ParseError("endomorphism needs one image per generator");
    }
};

// ---- Fox calculus ----

// d(uv)/dg = du/dg + u dv/dg, dg/dg = 1, dh/dg = 0; syllable g^e expands to
// 1 + g + ... + g^(e-1) (resp. -(g^-1 + ... + g^e)) behind the running prefix.
inline GroupRingElem fox_derivative(const Word& w, int gen) {
    GroupRingElem res;
    Word prefix;
    for (auto& [g, e] : w.syl) {
        if (g == gen) {
            if (e > 0) {
                for (std::int64_t s = 0; s < e; ++s)
                    res.add_term(word_mul(prefix, word_gen(g, s)), Rat(1));
            } else {
                for (std::int64_t s = 1; s <= -e; ++s)
                    res.add_term(word_mul(prefix, word_gen(g, -s)), Rat(-1));
            }
        }
        prefix = word_mul(prefix, word_gen(g, e));
    }
    return res;
}

// rows = relators, cols = generators
inline GroupRingMatrix fox_jacobian(const Presentation& P) {
    GroupRingMatrix J((int)P.relators.size(), (int)P.generators.size());
    for (int i = 0; i < J.rows; ++i)
        for (int j = 0; j < J.cols; ++j) J.at(i, j) = fox_derivative(P.relators[i], j);
    return J;
}

// A_ij = d f(g_i) / d g_j
inline GroupRingMatrix monodromy_jacobian(const FreeGroupEndo& f) {
    f.validate();
    const int n = (int)f.generators.size();
    GroupRingMatrix A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A.at(i, j) = fox_derivative(f.images[i], j);
    return A;
}

// ---- knot presentations ----

// <x, y | x^p y^-q>, phi(x) = q, phi(y) = p (the meridian class generates Z).
inline Presentation torus_presentation(int p, int q) {
    if (p < 2 || q < 2) throw ParseError("torus knot needs p, q >= 2");
    if (std::gcd(p, q) != 1) throw ParseError("torus knot needs coprime p, q");
    Presentation P;
    P.generators = {"x", "y"};
    P.relators = {word_mul(word_gen(0, p), word_gen(1, -q))};
    P.phi.rank = 1;
    P.phi.images = {{q}, {p}};
    P.kind = PresentationKind::torus;
    P.torus_p = p;
    P.torus_q = q;
    P.validate();
    return P;
}

// Wirtinger presentation from a PD code. One generator per arc (over-strand
// edge pairs merged), one relator u_out^-1 o^eps u_in o^-eps per crossing,
// with the highest-indexed crossing's relator dropped (deficiency one).
// phi sends every meridian generator to 1.
inline Presentation wirtinger_from_pd(const PDCode& D) {
    const std::int64_t n = (std::int64_t)D.crossings.size();
    Presentation P;
    P.kind = PresentationKind::wirtinger;
    if (n == 0) { // zero-crossing unknot diagram
        P.generators = {"a1"};
        P.phi.rank = 1;
        P.phi.images = {{1}};
        P.validate();
        return P;
    }
    const std::int64_t m = 2 * n; // edge labels 1..2n
    std::vector<int> seen((std::size_t)m + 1, 0);
    auto cyc_succ = [m](std::int64_t a, std::int64_t b) { return (a % m) + 1 == b; };
    for (auto& c : D.crossings)
        for (auto e : c) {
            if (e < 1 || e > m) throw ParseError("PD edge label out of range 1..2n");
            ++seen[(std::size_t)e];
        }
    for (std::int64_t e = 1; e <= m; ++e)
        if (seen[(std::size_t)e] != 2)
            throw ParseError("PD edge label " + std::to_string(e) + " must occur exactly twice");
    for (auto& c : D.crossings) {
        if (!cyc_succ(c[0], c[2]))
            throw ParseError("PD under-strand must continue its edge numbering");
        if (!cyc_succ(c[1], c[3]) && !cyc_succ(c[3], c[1]))
            throw ParseError("PD over-strand edges must be cyclically adjacent");
    }

    // arcs: union of over-strand edge pairs; under-strands break at crossings
    std::vector<std::int64_t> parent((std::size_t)m + 1);
    for (std::int64_t e = 0; e <= m; ++e) parent[(std::size_t)e] = e;
    std::function<std::int64_t(std::int64_t)> find = [&](std::int64_t x) {
        while (parent[(std::size_t)x] != x) {
            parent[(std::size_t)x] = parent[(std::size_t)parent[(std::size_t)x]];
            x = parent[(std::size_t)x];
        }
        return x;
    };
    for (auto& c : D.crossings) parent[(std::size_t)find(c[1])] = find(c[3]);

    std::map<std::int64_t, int> arc_index;
    for (std::int64_t e = 1; e <= m; ++e) {
        std::int64_t root = find(e);
        if (!arc_index.count(root)) {
            int idx = (int)arc_index.size();
            arc_index.emplace(root, idx);
            P.generators.push_back("a" + std::to_string(idx + 1));
        }
    }
    auto arc_of = [&](std::int64_t e) { return arc_index.at(find(e)); };

    for (std::int64_t ci = 0; ci + 1 < n; ++ci) { // last crossing's relator dropped
        auto& c = D.crossings[(std::size_t)ci];
        int u_in = arc_of(c[0]), u_out = arc_of(c[2]), over = arc_of(c[1]);
        std::int64_t eps = cyc_succ(c[3], c[1]) ? 1 : -1; // j = l+1 positive, l = j+1 negative
        Word r = word_gen(u_out, -1);
        r = word_mul(r, word_gen(over, eps));
        r = word_mul(r, word_gen(u_in, 1));
        r = word_mul(r, word_gen(over, -eps));
        P.relators.push_back(r);
    }

    P.phi.rank = 1;
    P.phi.images.assign(P.generators.size(), {1});
    P.validate();
    return P;
}

// ---- mapping torus of a free-group endomorphism ----

struct MappingTorusComplex {
    // boundary matrices over the free group on f's generators plus the fresh
    // stable letter mu (last generator index)
    GroupRingMatrix B3; // 1 x (1+n)
    GroupRingMatrix B2; // (1+n) x (n+1), middle block id_n - mu*A
    GroupRingMatrix B1; // (n+1) x 1, rows 1 - g_i then 1 - mu
    std::vector<std::string> generators; // extended alphabet
    int mu_index = 0;
    // Unspecified blocks of the CW boundary (B3 tail, B2 first row and last
    // column) are zero placeholders; they are never selected by a valid
    // row/column choice because they make every alternative singular.
    std::vector<std::string> placeholder_notes;
};

inline MappingTorusComplex mapping_torus_matrices(const FreeGroupEndo& f,
                                                  const std::string& mu_name = "mu") {
    f.validate();
    const int n = (int)f.generators.size();
    for (auto& g : f.generators)
        if (g == mu_name) throw ParseError("stable letter name collides with a generator");

    MappingTorusComplex mt;
    mt.generators = f.generators;
    mt.generators.push_back(mu_name);
    mt.mu_index = n;

    GroupRingMatrix A = monodromy_jacobian(f); // entries in the fiber letters only
    Word mu = word_gen(n, 1);

    mt.B3 = GroupRingMatrix(1, 1 + n);
    mt.B3.at(0, 0) = gr_sub(gr_one(), gr_of(mu));

    mt.B2 = GroupRingMatrix(1 + n, n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            GroupRingElem e = gr_neg(gr_word_mul(mu, A.at(i, j)));
            if (i == j) e = gr_add(gr_one(), e);
            mt.B2.at(1 + i, j) = e;
        }

    mt.B1 = GroupRingMatrix(n + 1, 1);
    for (int i = 0; i < n; ++i) mt.B1.at(i, 0) = gr_sub(gr_one(), gr_of(word_gen(i, 1)));
    mt.B1.at(n, 0) = gr_sub(gr_one(), gr_of(mu));

    mt.placeholder_notes = {"B3 columns 2..n+1 not used by torsion evaluation",
                            "B2 row 1 and column n+1 not used by torsion evaluation"};
    return mt;
}

} // namespace l2alex
