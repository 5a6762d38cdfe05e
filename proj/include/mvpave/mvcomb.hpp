#ifndef MVPAVE_MVCOMB_HPP
#define MVPAVE_MVCOMB_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rootdata.hpp"

namespace mvpave {

enum class Word { w121, w212 };

inline std::array<int, 3> letters(Word w) {
    return w == Word::w121 ? std::array<int, 3>{1, 2, 1} : std::array<int, 3>{2, 1, 2};
}
inline std::string to_string(Word w) { return w == Word::w121 ? "121" : "212"; }
inline Word word_from_string(const std::string &s) {
    if (s == "121") return Word::w121;
    if (s == "212") return Word::w212;
    throw precondition_violation("reduced word must be 121 or 212, got '" + s + "'");
}
inline Word other(Word w) { return w == Word::w121 ? Word::w212 : Word::w121; }

struct LusztigDatum {
    Word word = Word::w121;
    std::array<int, 3> n{0, 0, 0};

    bool operator==(const LusztigDatum &o) const { return word == o.word && n == o.n; }
    bool operator!=(const LusztigDatum &o) const { return !(*this == o); }
};

inline LusztigDatum braid(const LusztigDatum &d) {
    const auto &n = d.n;
    int a = std::min(n[0], n[2]);
    return {other(d.word), {n[1] + n[2] - a, a, n[0] + n[1] - a}};
}

inline LusztigDatum in_word(const LusztigDatum &d, Word w) { return d.word == w ? d : braid(d); }

// Prefixes w_j = s_{i1} ... s_{ij}, j = 0..3.
inline std::array<WeylElt, 4> word_prefixes(Word word) {
    std::array<WeylElt, 4> w;
    auto l = letters(word);
    for (int j = 1; j <= 3; ++j) w[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(j - 1)] * weyl::s(l[static_cast<std::size_t>(j - 1)]);
    return w;
}

// beta_j = -w_{j-1} . alpha_{i_j}^vee
inline std::array<Coweight, 3> betas(Word word) {
    auto w = word_prefixes(word);
    auto l = letters(word);
    std::array<Coweight, 3> b{};
    for (int j = 0; j < 3; ++j) {
        int i = l[static_cast<std::size_t>(j)];
        Root a = w[static_cast<std::size_t>(j)].act(Root{i - 1, i});
        b[static_cast<std::size_t>(j)] = -1 * a.coroot();
    }
    return b;
}

// Edge lengths of the path lambda_{w_0}, ..., lambda_{w_3} of a family.
inline LusztigDatum datum_of(const GTFamily &f, Word word) {
    auto w = word_prefixes(word);
    auto l = letters(word);
    LusztigDatum d{word, {}};
    for (int j = 0; j < 3; ++j) d.n[static_cast<std::size_t>(j)] = edge_length(f, w[static_cast<std::size_t>(j)], l[static_cast<std::size_t>(j)]);
    return d;
}

// Vertex family of the MV polytope with the given datum. The translation is
// chosen so that base = 0 reproduces the labelled hexagon with
// lambda_e = (n1, 0, -n2) in (121) coordinates.
inline GTFamily vertices_of(const LusztigDatum &d, const Coweight &base) {
    LusztigDatum a = in_word(d, Word::w121), b = braid(a);
    GTFamily f;
    Coweight top = base + Coweight{a.n[0], 0, -a.n[1]};
    f.nu = coweight_sum(top);
    for (const auto &dd : {a, b}) {
        auto w = word_prefixes(dd.word);
        auto l = letters(dd.word);
        Coweight v = top;
        f.lam[static_cast<std::size_t>(weyl::index(w[0]))] = v;
        for (int j = 0; j < 3; ++j) {
            int i = l[static_cast<std::size_t>(j)];
            Root r = w[static_cast<std::size_t>(j)].act(Root{i - 1, i});
            v = v - dd.n[static_cast<std::size_t>(j)] * r.coroot();
            f.lam[static_cast<std::size_t>(weyl::index(w[static_cast<std::size_t>(j + 1)]))] = v;
        }
    }
    validate(f);
    return f;
}

// MV polytope: top vertex lambda_e plus both Lusztig data.
class MVPolytope {
public:
    MVPolytope() = default;
    MVPolytope(const LusztigDatum &d, const Coweight &base) {
        d121_ = in_word(d, Word::w121);
        d212_ = braid(d121_);
        top_ = base + Coweight{d121_.n[0], 0, -d121_.n[1]};
        if (braid(d212_) != d121_) throw not_mv("braid relation violated");
    }
    static MVPolytope with_top(const LusztigDatum &d, const Coweight &top) {
        LusztigDatum a = in_word(d, Word::w121);
        return MVPolytope(a, top - Coweight{a.n[0], 0, -a.n[1]});
    }

    const LusztigDatum &datum(Word w = Word::w121) const { return w == Word::w121 ? d121_ : d212_; }
    const Coweight &top() const { return top_; }
    Coweight base() const { return top_ - Coweight{d121_.n[0], 0, -d121_.n[1]}; }
    GTFamily family() const { return vertices_of(d121_, base()); }
    int nu() const { return coweight_sum(top_); }

    bool operator==(const MVPolytope &o) const { return top_ == o.top_ && d121_ == o.d121_; }
    bool operator!=(const MVPolytope &o) const { return !(*this == o); }

private:
    Coweight top_{0, 0, 0};
    LusztigDatum d121_{Word::w121, {0, 0, 0}};
    LusztigDatum d212_{Word::w212, {0, 0, 0}};
};

inline int dimension(const LusztigDatum &d) {
    LusztigDatum a = in_word(d, Word::w121);
    return a.n[0] + 2 * a.n[1] + a.n[2];
}
inline int dimension(const MVPolytope &P) { return dimension(P.datum()); }

// mu = sum n_j beta_j = lambda_{w0} - lambda_e.
inline Coweight coweight(const LusztigDatum &d) {
    auto b = betas(d.word);
    Coweight mu{0, 0, 0};
    for (int j = 0; j < 3; ++j) mu = mu + d.n[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(j)];
    return mu;
}
inline Coweight coweight(const MVPolytope &P) { return coweight(P.datum()); }

inline int rho_score(const GTFamily &f, const WeylElt &w) {
    Coweight d = f.at(w) - f.at(w * weyl::w0());
    Coweight r = w.act(rho());
    return r[0] * d[0] + r[1] * d[1] + r[2] * d[2];
}

struct Canonical {
    WeylElt w;
    MVPolytope P;
};

// Pick w minimizing <w.rho, lambda_w - lambda_{w w0}> (first in weyl::all()
// on ties) and return w^{-1}.f as an MV polytope.
inline Canonical canonicalize(const GTFamily &f) {
    validate(f);
    int best = 0, score = rho_score(f, weyl::all()[0]);
    for (int k = 1; k < 6; ++k) {
        int s = rho_score(f, weyl::all()[static_cast<std::size_t>(k)]);
        if (s < score) score = s, best = k;
    }
    WeylElt w = weyl::all()[static_cast<std::size_t>(best)];
    GTFamily g = weyl_act(w.inverse(), f);
    LusztigDatum a = datum_of(g, Word::w121), b = datum_of(g, Word::w212);
    if (braid(a) != b) throw not_mv("no Weyl translate satisfies the braid relation");
    MVPolytope P = MVPolytope::with_top(a, g.at(weyl::id()));
    if (P.family() != g) throw not_mv("family is not determined by its Lusztig data");
    return {w, P};
}

inline bool is_mv(const GTFamily &f) {
    try {
        validate(f);
        LusztigDatum a = datum_of(f, Word::w121), b = datum_of(f, Word::w212);
        return braid(a) == b;
    } catch (const inconsistent_family &) {
        return false;
    }
}

// Crystal operators act in the word ending with i and keep lambda_e fixed.
inline MVPolytope crystal_F(int i, const MVPolytope &P) {
    if (i != 1 && i != 2) throw precondition_violation("crystal index must be 1 or 2");
    LusztigDatum d = P.datum(i == 1 ? Word::w121 : Word::w212);
    d.n[2] += 1;
    return MVPolytope::with_top(d, P.top());
}

inline std::optional<MVPolytope> crystal_E(int i, const MVPolytope &P) {
    if (i != 1 && i != 2) throw precondition_violation("crystal index must be 1 or 2");
    LusztigDatum d = P.datum(i == 1 ? Word::w121 : Word::w212);
    if (d.n[2] == 0) return std::nullopt;
    d.n[2] -= 1;
    return MVPolytope::with_top(d, P.top());
}

using CrystalWord = std::vector<int>;

inline void check_alternating(const CrystalWord &j) {
    for (std::size_t k = 0; k < j.size(); ++k) {
        if (j[k] != 1 && j[k] != 2) throw precondition_violation("crystal word letters must be 1 or 2");
        if (k && j[k] == j[k - 1]) throw precondition_violation("crystal word must alternate");
    }
}

inline CrystalWord parse_crystal_word(const std::string &s) {
    CrystalWord j;
    for (char c : s) {
        if (c == ',' || c == ' ') continue;
        j.push_back(c - '0');
    }
    check_alternating(j);
    return j;
}

// E_{j1} ... E_{jl} applied right to left; nullopt is the annihilator.
inline std::optional<MVPolytope> apply_crystal_word(const CrystalWord &j, const MVPolytope &P) {
    check_alternating(j);
    std::optional<MVPolytope> cur = P;
    for (auto it = j.rbegin(); it != j.rend() && cur; ++it) cur = crystal_E(*it, *cur);
    return cur;
}

// n1 >= n3 >= n2 in (121) coordinates.
inline bool normal_position(const LusztigDatum &d) {
    LusztigDatum a = in_word(d, Word::w121);
    return a.n[0] >= a.n[2] && a.n[2] >= a.n[1];
}

} // namespace mvpave

#endif
