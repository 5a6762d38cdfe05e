// mvpave: command-line front end. Every subcommand prints one JSON document
// on stdout. Exit status: 0 ok, 1 failed verification, 2 domain error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mvpave/suite.hpp"

using json = nlohmann::json;
using namespace mvpave;

namespace {

struct Config {
    std::uint32_t prime = 2;
    int precision = kDefaultPrecision;
    long long budget = 20'000'000;
    std::uint64_t seed = 7;
    std::string format = "pretty";
};

std::optional<long long> env_int(const char *name) {
    const char *v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    try {
        return std::stoll(v);
    } catch (const std::exception &) {
        throw precondition_violation(std::string("environment variable ") + name + " is not an integer");
    }
}

void validate(const Config &c) {
    if (!PrimeField::is_prime(c.prime)) throw precondition_violation(std::to_string(c.prime) + " is not prime");
    if (c.precision < 16) throw precondition_violation("precision must be at least 16");
    if (c.budget <= 0) throw precondition_violation("budget must be positive");
}

std::vector<int> parse_ints(const std::string &s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stoi(tok));
    return out;
}

std::array<int, 3> triple(const std::string &s, const char *what) {
    auto v = parse_ints(s);
    if (v.size() != 3) throw precondition_violation(std::string(what) + " needs three comma-separated integers");
    return {v[0], v[1], v[2]};
}

std::vector<std::uint32_t> parse_primes(const std::string &s) {
    std::vector<std::uint32_t> out;
    for (int q : parse_ints(s)) {
        if (q < 2 || !PrimeField::is_prime(static_cast<std::uint64_t>(q))) throw precondition_violation(std::to_string(q) + " is not prime");
        out.push_back(static_cast<std::uint32_t>(q));
    }
    return out;
}

json to_json(const Coweight &v) { return json::array({v[0], v[1], v[2]}); }

json to_json(const LusztigDatum &d) { return {{"word", to_string(d.word)}, {"n", json::array({d.n[0], d.n[1], d.n[2]})}}; }

json to_json(const LaurentSeries &x) {
    json j{{"lead", x.lead()}, {"coeffs", x.coeffs()}};
    if (x.exact()) j["prec"] = "exact";
    else j["prec"] = x.prec();
    return j;
}

json to_json(const GTFamily &f) {
    json v = json::object();
    for (const auto &w : weyl::all()) v[w.one_line()] = to_json(f.at(w));
    json b = json::array();
    for (int k = 0; k < 6; ++k) b.push_back(to_json(f.at_borel(k)));
    return {{"nu", f.nu}, {"vertices", v}, {"borel_vertices", b}};
}

json to_json(const MVPolytope &P) {
    return {{"base", to_json(P.base())},   {"top", to_json(P.top())},
            {"datum121", to_json(P.datum(Word::w121))}, {"datum212", to_json(P.datum(Word::w212))},
            {"dimension", dimension(P)},    {"coweight", to_json(coweight(P))},
            {"family", to_json(P.family())}};
}

json to_json(const GrassPoint &x) {
    json h = json::object();
    h["d"] = to_json(x.d());
    h["h10"] = to_json(x.h()(1, 0));
    h["h20"] = to_json(x.h()(2, 0));
    h["h21"] = to_json(x.h()(2, 1));
    return h;
}

json to_json(const PoincarePoly &P) { return {{"b", P.b}, {"text", P.to_string()}}; }

json to_json(const PavingPlan &plan) {
    json steps = json::array();
    for (const auto &s : plan.steps) {
        json j{{"vertex", to_json(s.vertex)}, {"borel", s.borel}, {"dim", s.dim}};
        steps.push_back(j);
    }
    json ver = json::array();
    for (const auto &v : plan.verified)
        ver.push_back({{"q", v.q}, {"points", v.points}, {"predicted", v.predicted}, {"ok", v.ok}, {"detail", v.detail}});
    return {{"steps", steps}, {"verification", ver}, {"poincare", to_json(plan.poincare())}, {"verified", plan.ok()}};
}

json read_json_arg(const std::string &arg) {
    if (!arg.empty() && arg.front() == '{') return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw precondition_violation("cannot open " + arg);
    return json::parse(in);
}

// {"word": "121", "n": [..], "base": [..]}, {"weyl": [..]} or a raw family
// {"nu": .., "vertices": {"123": [..], ..}}.
GTFamily family_from_json(const json &j) {
    if (j.contains("weyl")) return weyl_polytope(j["weyl"].get<Coweight>());
    if (j.contains("n")) {
        LusztigDatum d{word_from_string(j.value("word", std::string("121"))), j["n"].get<std::array<int, 3>>()};
        Coweight base = j.contains("base") ? j["base"].get<Coweight>() : Coweight{0, 0, 0};
        return vertices_of(d, base);
    }
    if (j.contains("vertices")) {
        GTFamily f;
        for (auto it = j["vertices"].begin(); it != j["vertices"].end(); ++it)
            f.lam[static_cast<std::size_t>(weyl::index(weyl::from_one_line(it.key())))] = it.value().get<Coweight>();
        f.nu = j.contains("nu") ? j["nu"].get<int>() : coweight_sum(f.lam[0]);
        validate(f);
        return f;
    }
    throw precondition_violation("polytope JSON needs 'n', 'weyl' or 'vertices'");
}

struct PolytopeArgs {
    std::string file, word = "121", n, base = "0,0,0", weyl;

    void attach(CLI::App *c) {
        c->add_option("--polytope", file, "polytope JSON file or inline JSON");
        c->add_option("--word", word, "reduced word 121 or 212");
        c->add_option("--n", n, "Lusztig datum n1,n2,n3");
        c->add_option("--base", base, "translation of the base vertex");
        c->add_option("--weyl", weyl, "Weyl polytope of a coweight");
    }
    GTFamily family() const {
        if (!file.empty()) return family_from_json(read_json_arg(file));
        if (!weyl.empty()) return weyl_polytope(triple(weyl, "--weyl"));
        if (n.empty()) throw precondition_violation("give --polytope, --n or --weyl");
        return vertices_of({word_from_string(word), triple(n, "--n")}, triple(base, "--base"));
    }
    MVPolytope polytope() const {
        if (n.empty()) return canonicalize(family()).P;
        return MVPolytope({word_from_string(word), triple(n, "--n")}, triple(base, "--base"));
    }
};

std::optional<MVPolytope> apply_ops(const std::string &ops, MVPolytope P) {
    std::optional<MVPolytope> cur = P;
    std::stringstream ss(ops);
    std::string tok;
    std::vector<std::string> toks;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) toks.push_back(tok);
    for (auto it = toks.rbegin(); it != toks.rend() && cur; ++it) {
        const std::string &t = *it;
        if (t.size() != 2 || (t[0] != 'E' && t[0] != 'F') || (t[1] != '1' && t[1] != '2'))
            throw precondition_violation("crystal operator must be E1, E2, F1 or F2, got '" + t + "'");
        int i = t[1] - '0';
        cur = t[0] == 'E' ? crystal_E(i, *cur) : std::optional<MVPolytope>(crystal_F(i, *cur));
    }
    return cur;
}

json crystal_neighbors(const MVPolytope &P) {
    json j = json::object();
    for (int i : {1, 2}) {
        auto e = crystal_E(i, P);
        j["E" + std::to_string(i)] = e ? to_json(e->datum(Word::w121)) : json(nullptr);
        j["F" + std::to_string(i)] = to_json(crystal_F(i, P).datum(Word::w121));
    }
    return j;
}

ValuationPattern gamma_pattern(const json &j) {
    if (j.contains("c")) {
        auto c = j["c"].get<std::array<int, 3>>();
        return {c[0], c[1], c[2]};
    }
    throw precondition_violation("gamma JSON needs 'c' or 'series'");
}

RegularDiagonal gamma_from_json(const json &j, std::uint32_t p, int prec, std::mt19937_64 &rng) {
    if (j.contains("series")) {
        std::array<LaurentSeries, 3> g;
        for (std::size_t k = 0; k < 3; ++k) {
            const json &s = j["series"].at(k);
            auto c = s.at("coeffs").get<std::vector<LaurentSeries::coeff_t>>();
            int lead = s.value("lead", 0);
            g[k] = s.contains("prec") && s["prec"].is_number() ? LaurentSeries::series(p, lead, c, s["prec"].get<int>())
                                                               : LaurentSeries::polynomial(p, lead, c);
        }
        return make_gamma(g);
    }
    ValuationPattern c = gamma_pattern(j);
    if (!j.value("random_units", false)) return make_gamma(c, p);
    // rescale the canonical representative by a random unit and shift: same pattern
    RegularDiagonal g = make_gamma(c, p);
    std::uniform_int_distribution<std::uint32_t> unit(1, p - 1);
    LaurentSeries u = LaurentSeries::constant(p, unit(rng)) + random_poly(1, 4, p, rng);
    LaurentSeries a = random_poly(0, 3, p, rng);
    std::array<LaurentSeries, 3> h;
    for (std::size_t k = 0; k < 3; ++k) h[k] = (g.g[k] * u + a).truncated(prec);
    return make_gamma(h);
}

void emit(const json &j, const Config &cfg, const std::string &out = "") {
    std::string s = cfg.format == "compact" ? j.dump() : j.dump(2);
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw precondition_violation("cannot write " + out);
        f << s << "\n";
    } else {
        std::cout << s << "\n";
    }
}

} // namespace

int main(int argc, char **argv) {
    Config cfg;
    CLI::App app{"MV polytopes, truncated affine Grassmannians and their pavings"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--prime", cfg.prime, "field size for enumeration (env MVPAVE_PRIME)");
    app.add_option("--prec", cfg.precision, "working precision for sampled series (env MVPAVE_PREC)");
    app.add_option("--budget", cfg.budget, "enumeration work budget (env MVPAVE_BUDGET)");
    app.add_option("--seed", cfg.seed, "random seed (env MVPAVE_SEED)");
    app.add_option("--format", cfg.format, "pretty or compact JSON")->check(CLI::IsMember({"pretty", "compact"}));

    try {
        if (auto v = env_int("MVPAVE_PRIME")) cfg.prime = static_cast<std::uint32_t>(*v);
        if (auto v = env_int("MVPAVE_PREC")) cfg.precision = static_cast<int>(*v);
        if (auto v = env_int("MVPAVE_BUDGET")) cfg.budget = *v;
        if (auto v = env_int("MVPAVE_SEED")) cfg.seed = static_cast<std::uint64_t>(*v);
    } catch (const domain_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    int status = 0;
    std::function<void()> action;

    // polytope
    PolytopeArgs poly_args;
    std::string poly_apply;
    auto *poly = app.add_subcommand("polytope", "vertices, Lusztig data and crystal neighbours");
    poly_args.attach(poly);
    poly->add_option("--apply", poly_apply, "crystal operators, rightmost first, e.g. E1,E2");
    poly->callback([&] {
        action = [&] {
            MVPolytope P = poly_args.polytope();
            json j;
            if (!poly_apply.empty()) {
                auto R = apply_ops(poly_apply, P);
                j["input"] = to_json(P.datum(Word::w121));
                j["applied"] = poly_apply;
                if (!R) {
                    j["result"] = nullptr;
                    emit(j, cfg);
                    return;
                }
                P = *R;
            }
            j["polytope"] = to_json(P);
            j["datum"] = to_json(P.datum(Word::w121));
            j["distinct_vertices"] = json::array();
            for (const auto &v : P.family().distinct_vertices()) j["distinct_vertices"].push_back(to_json(v));
            j["crystal"] = crystal_neighbors(P);
            emit(j, cfg);
        };
    });

    // braid
    std::string braid_word = "121", braid_n;
    auto *br = app.add_subcommand("braid", "tropical braid move");
    br->add_option("--word", braid_word);
    br->add_option("--n", braid_n)->required();
    br->callback([&] {
        action = [&] {
            LusztigDatum d{word_from_string(braid_word), triple(braid_n, "--n")};
            emit({{"input", to_json(d)}, {"output", to_json(braid(d))}}, cfg);
        };
    });

    // crystal
    PolytopeArgs cr_args;
    std::string cr_word;
    bool cr_weight = false;
    auto *cr = app.add_subcommand("crystal", "apply E_j for an alternating word j");
    cr_args.attach(cr);
    cr->add_option("--j", cr_word, "alternating word, e.g. 212")->required();
    cr->add_flag("--weight-normalized", cr_weight, "use the operators lowering the weight by alpha_i");
    cr->callback([&] {
        action = [&] {
            MVPolytope P = cr_args.polytope();
            CrystalWord j = parse_crystal_word(cr_word);
            auto R = cr_weight ? apply_weight_word(j, P) : apply_crystal_word(j, P);
            json out{{"input", to_json(P.datum(Word::w121))}, {"j", word_string(j)}, {"weight_normalized", cr_weight}};
            out["result"] = R ? to_json(*R) : json(nullptr);
            emit(out, cfg);
        };
    });

    // points
    PolytopeArgs pt_args;
    bool pt_list = false;
    int pt_sample = 0;
    std::string pt_out;
    auto *pt = app.add_subcommand("points", "F_q-points of the truncated affine Grassmannian");
    pt_args.attach(pt);
    pt->add_flag("--list", pt_list, "include the canonical forms");
    pt->add_option("--sample", pt_sample, "instead draw generic points [y(t)^-1] with val t = n over F_prime");
    pt->add_option("--out", pt_out);
    pt->callback([&] {
        action = [&] {
            GTFamily f = pt_args.family();
            json j{{"family", to_json(f)}, {"prime", cfg.prime}};
            if (pt_sample > 0) {
                if (pt_args.n.empty()) throw precondition_violation("--sample needs --n");
                LusztigDatum d{word_from_string(pt_args.word), triple(pt_args.n, "--n")};
                std::mt19937_64 rng(cfg.seed);
                GTFamily target = vertices_of(d, {-d.n[0], 0, d.n[1]});
                int inside = 0, equal = 0;
                json pts = json::array();
                for (int s = 0; s < pt_sample; ++s) {
                    std::array<LaurentSeries, 3> t;
                    for (std::size_t k = 0; k < 3; ++k)
                        t[k] = random_with_val(d.n[k], cfg.prime, rng, cfg.precision);
                    GrassPoint x = canonicalize_point(inverse(y_map(d.word, t)), cfg.precision);
                    inside += member(x, target);
                    equal += ec(x) == target;
                    if (pt_list) pts.push_back(to_json(x));
                }
                j["family"] = to_json(target);
                j["samples"] = pt_sample;
                j["inside"] = inside;
                j["ec_equal"] = equal;
                if (pt_list) j["points"] = pts;
            } else {
                EnumOptions opt;
                opt.budget = cfg.budget;
                auto pts = enumerate_points(f, cfg.prime, opt);
                j["count"] = pts.size();
                if (pt_list) {
                    j["points"] = json::array();
                    for (const auto &x : pts) j["points"].push_back(to_json(x));
                }
            }
            emit(j, cfg, pt_out);
        };
    });

    // graph
    PolytopeArgs gr_args;
    std::string gr_dot, gr_out;
    auto *gr = app.add_subcommand("graph", "moment graph of the truncation");
    gr_args.attach(gr);
    gr->add_option("--dot", gr_dot, "write Graphviz output here");
    gr->add_option("--out", gr_out);
    gr->callback([&] {
        action = [&] {
            MomentGraph G = skeleton(gr_args.family());
            json v = json::array(), e = json::array(), w = json::array();
            for (const auto &x : G.vertices) {
                v.push_back(to_json(x));
                w.push_back(wt(G, x));
            }
            for (const auto &E : G.edges)
                e.push_back({{"u", to_json(G.vertices[static_cast<std::size_t>(E.u)])},
                             {"v", to_json(G.vertices[static_cast<std::size_t>(E.v)])},
                             {"alpha", E.alpha.name()},
                             {"k", E.k}});
            if (!gr_dot.empty()) {
                std::ofstream f(gr_dot);
                if (!f) throw precondition_violation("cannot write " + gr_dot);
                f << to_dot(G);
            }
            emit({{"vertices", v}, {"edges", e}, {"wt", w}}, cfg, gr_out);
        };
    });

    // betti
    PolytopeArgs bt_args;
    int bt_max = 22;
    auto *bt = app.add_subcommand("betti", "minimum formal Poincare polynomial over total orders");
    bt_args.attach(bt);
    bt->add_option("--max-vertices", bt_max);
    bt->callback([&] {
        action = [&] {
            MomentGraph G = skeleton(bt_args.family());
            auto m = min_formal_poincare(G, bt_max);
            json order = json::array();
            for (int k : m.order) order.push_back(to_json(G.vertices[static_cast<std::size_t>(k)]));
            emit({{"minimum", to_json(m.poly)}, {"order_smallest_first", order}}, cfg);
        };
    });

    // pave
    PolytopeArgs pv_args;
    std::string pv_method = "greedy", pv_q = "2,3", pv_out;
    auto *pv = app.add_subcommand("pave", "affine paving with point-count verification");
    pv_args.attach(pv);
    pv->add_option("--method", pv_method)->check(CLI::IsMember({"greedy", "iwahori"}));
    pv->add_option("--verify-q", pv_q);
    pv->add_option("--out", pv_out);
    pv->callback([&] {
        action = [&] {
            auto qs = parse_primes(pv_q);
            PavingPlan plan;
            if (pv_method == "iwahori") {
                MVPolytope P = pv_args.polytope();
                plan = paving_121(P.datum(Word::w121), qs);
            } else {
                plan = greedy_paving(pv_args.family(), {qs, 2});
            }
            json j = to_json(plan);
            j["method"] = pv_method;
            emit(j, cfg, pv_out);
            if (!plan.ok()) status = 1;
        };
    });

    // springer
    std::string sp_gamma, sp_trunc, sp_q = "2,3", sp_crit, sp_out;
    PolytopeArgs sp_args;
    auto *sp = app.add_subcommand("springer", "affine Springer fibers for diagonal gamma");
    sp->add_option("--gamma", sp_gamma, "JSON file or inline JSON: {\"c\":[c12,c23,c13]} or {\"series\":[..]}")->required();
    sp->add_option("--truncate", sp_trunc, "j=<word>: paving of the truncation by E_j P");
    sp->add_option("--verify-q", sp_q);
    sp->add_option("--criterion", sp_crit, "Borel index: test the cell of the given polytope");
    sp_args.attach(sp);
    sp->add_option("--out", sp_out);
    sp->callback([&] {
        action = [&] {
            json gj = read_json_arg(sp_gamma);
            std::mt19937_64 rng(cfg.seed);
            RegularDiagonal g = gamma_from_json(gj, cfg.prime, cfg.precision, rng);
            json j{{"c", json::array({g.c.c12, g.c.c23, g.c.c13})}, {"dimension", springer_dim(g)}};
            j["gamma"] = json::array({to_json(g.g[0]), to_json(g.g[1]), to_json(g.g[2])});
            if (!sp_crit.empty()) {
                int b = std::stoi(sp_crit);
                MVPolytope P = sp_args.polytope();
                auto cv = criterion_value(P, b, g.c);
                auto orc = criterion_oracle(P, b, g, cfg.budget);
                j["criterion"] = {{"l", cv.l}, {"sum", cv.sum}, {"bound", cv.bound}, {"affine", cv.affine},
                                  {"oracle_points", orc.count}, {"oracle_curves", orc.curves},
                                  {"oracle_affine", orc.affine_like}, {"agree", cv.affine == orc.affine_like}};
                if (cv.affine != orc.affine_like) status = 1;
            }
            if (!sp_trunc.empty()) {
                std::string w = sp_trunc.rfind("j=", 0) == 0 ? sp_trunc.substr(2) : sp_trunc;
                CrystalWord word = w.empty() || w == "()" ? CrystalWord{} : parse_crystal_word(w);
                auto T = truncated_paving(g.c, word, parse_primes(sp_q));
                json t{{"j", word_string(word)}, {"zero", T.zero}};
                if (!T.zero) {
                    t["polytope"] = to_json(T.polytope->datum(Word::w121));
                    t["base_word"] = word_string(T.base_word);
                    t["base"] = to_json(T.base->datum(Word::w121));
                    t["springer_automatic_on_base"] = T.springer_automatic;
                    json layers = json::array();
                    for (const auto &L : T.layers) {
                        json o = json::array();
                        for (const auto &v : L.order) o.push_back(to_json(v));
                        static const char *names[] = {"single", "collinear", "vee", "other"};
                        layers.push_back({{"word", word_string(L.word)}, {"shape", names[static_cast<int>(L.shape)]}, {"order", o}});
                    }
                    t["layers"] = layers;
                    t["plan"] = to_json(T.plan);
                    if (!T.plan.ok()) status = 1;
                }
                j["truncated"] = t;
            }
            emit(j, cfg, sp_out);
        };
    });

    // check
    std::string ck_suite = "all", ck_out;
    bool ck_verbose = false;
    auto *ck = app.add_subcommand("check", "run the acceptance checks");
    ck->add_option("--suite", ck_suite, "all or a comma list of criterion numbers 1..10");
    ck->add_option("--out", ck_out);
    ck->add_flag("-v,--verbose", ck_verbose, "progress on stderr");
    ck->callback([&] {
        action = [&] {
            suite::Options opt;
            opt.seed = cfg.seed;
            if (ck_verbose) opt.log = [](const std::string &s) { std::cerr << s << "\n"; };
            std::set<int> only;
            if (ck_suite != "all")
                for (int k : parse_ints(ck_suite)) only.insert(k);
            auto res = suite::run(opt, only);
            json arr = json::array();
            bool all = true;
            for (const auto &r : res) {
                arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"summary", r.summary},
                               {"witness", r.witness}, {"notes", r.notes}});
                all = all && r.pass;
            }
            emit({{"seed", cfg.seed}, {"results", arr}, {"pass", all}}, cfg, ck_out);
            if (!all) status = 1;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }
    try {
        validate(cfg);
        if (action) action();
    } catch (const domain_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception &e) {
        std::cerr << "error: bad JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: bad number: " << e.what() << "\n";
        return 2;
    }
    return status;
}
