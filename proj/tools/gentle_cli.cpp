// Command line front end.
//
// Exit codes: 0 ok, 1 usage, 2 rejected input, 3 invariant violation.
// GENTLE_FIELD selects the oracle field: "rationals" (default) or "gf:<p>", p >= 5.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gentle/ag.hpp"
#include "gentle/arcs.hpp"
#include "gentle/cones_ar.hpp"
#include "gentle/corpus.hpp"
#include "gentle/io.hpp"

using namespace gentle;

namespace {

struct FieldChoice {
    bool rational = true;
    long long p = 0;
};

FieldChoice field_from_env() {
    const char* e = std::getenv("GENTLE_FIELD");
    if (!e || !*e) return {};
    std::string s = e;
    if (s == "rationals") return {};
    if (s.rfind("gf:", 0) == 0) {
        long long p = std::stoll(s.substr(3));
        if (p < 5) throw std::runtime_error("GENTLE_FIELD: characteristic must be at least 5");
        PrimeField::set_modulus(p);
        return {false, p};
    }
    throw std::runtime_error("GENTLE_FIELD must be 'rationals' or 'gf:<p>'");
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Presentation load(const std::string& path) { return parse_presentation(slurp(path)); }

std::string why(const ValidationResult& vr) {
    std::string out;
    for (const std::string& e : vr.errors) out += (out.empty() ? "" : "; ") + e;
    return out;
}

int oracle_hom_dim(const FieldChoice& fc, const Presentation& p, const Object& a, const Object& b) {
    if (fc.rational)
        return hom_dim(p, object_complex<Rational>(p, a), object_complex<Rational>(p, b));
    return hom_dim(p, object_complex<PrimeField>(p, a), object_complex<PrimeField>(p, b));
}

int run_validate(const std::string& path) {
    Presentation p = load(path);
    ValidationResult vr = validate_gentle(p, false);
    if (!vr.ok) {
        std::cerr << "not gentle: " << why(vr) << "\n";
        return 2;
    }
    std::cout << "gentle presentation: " << p.vertices.size() << " vertices, " << p.arrows.size()
              << " arrows, " << p.relations.size() << " relations\n";
    std::cout << "finite dimensional: " << (vr.finite_dimensional ? "yes" : "no") << "\n";
    if (vr.finite_dimensional)
        std::cout << "path basis size: " << path_basis(p).size() << "\n";
    if (auto gd = global_dimension(p))
        std::cout << "global dimension: " << *gd << "\n";
    else
        std::cout << "global dimension: infinite\n";
    return 0;
}

int run_surface(const std::string& path, bool as_json, bool as_dot) {
    Presentation p = load(path);
    ValidationResult vr = validate_gentle(p);
    if (!vr.ok || !vr.finite_dimensional) {
        std::cerr << "surface model needs a finite dimensional gentle presentation: " << why(vr) << "\n";
        return 2;
    }
    SurfaceModel m = surface_model(p);
    if (as_dot) {
        std::cout << surface_dot(p, m);
        return 0;
    }
    if (as_json) {
        std::cout << surface_json(p, m).dump(2) << "\n";
        return 0;
    }
    std::cout << "genus " << m.genus << ", euler characteristic " << m.chi << "\n";
    std::cout << "marked points " << m.maximal.size() << ", chords " << p.vertices.size() << ", faces "
              << m.faces.size() << "\n";
    for (const Face& f : m.faces) {
        std::cout << "  face: marked " << f.marked << ", laminate ends " << f.laminate_ends;
        if (f.unmarked_cycle_len) std::cout << ", unmarked cycle length " << *f.unmarked_cycle_len;
        std::cout << "\n";
    }
    Presentation back = recover_algebra(m);
    if (!presentations_isomorphic(p, back)) {
        std::cerr << "invariant violation: surface does not recover the presentation\n";
        return 3;
    }
    return 0;
}

int run_ag(const std::string& path) {
    Presentation p = load(path);
    ValidationResult vr = validate_gentle(p, false);
    if (!vr.ok) {
        std::cerr << "not gentle: " << why(vr) << "\n";
        return 2;
    }
    auto pairs = ag_invariant(p);
    if (vr.finite_dimensional) {
        auto geo = surface_ag_pairs(surface_model(p));
        if (!same_ag(pairs, geo)) {
            std::cerr << "invariant violation: pairing count disagrees with the face count\n";
            return 3;
        }
    }
    std::cout << ag_json(pairs).dump() << "\n";
    return 0;
}

int run_koszul(const std::string& path, bool as_json) {
    Presentation p = load(path);
    ValidationResult vr = validate_gentle(p, false);
    if (!vr.ok) {
        std::cerr << "not gentle: " << why(vr) << "\n";
        return 2;
    }
    Presentation dual = koszul_dual(p);
    ValidationResult dv = validate_gentle(dual, false);
    if (!dv.ok) {
        std::cerr << "invariant violation: dual is not gentle\n";
        return 3;
    }
    if (!presentations_isomorphic(koszul_dual(dual), p)) {
        std::cerr << "invariant violation: double dual differs from the input\n";
        return 3;
    }
    if (as_json) {
        nlohmann::json j = presentation_json(dual);
        j["finite_dimensional"] = dv.finite_dimensional;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << presentation_text(dual);
        std::cout << "# finite dimensional: " << (dv.finite_dimensional ? "yes" : "no") << "\n";
    }
    return 0;
}

int run_hom(const std::string& path, const std::string& from, const std::string& to, bool as_json) {
    FieldChoice fc = field_from_env();
    Presentation p = load(path);
    Object a = parse_string_expr(p, from);
    Object b = parse_string_expr(p, to);
    int oracle = oracle_hom_dim(fc, p, a, b);
    std::vector<MorphismDesc> basis;
    try {
        basis = standard_basis(p, a, b);
    } catch (const std::invalid_argument& e) {
        std::cout << "combinatorial basis unavailable: " << e.what() << "\n";
        std::cout << "hom dimension (oracle): " << oracle << "\n";
        return 0;
    }
    if (as_json) {
        nlohmann::json j = nlohmann::json::array();
        for (const MorphismDesc& d : basis) j.push_back(morphism_json(p, a, b, d));
        std::cout << j.dump(2) << "\n";
    } else {
        for (const MorphismDesc& d : basis) std::cout << morphism_json(p, a, b, d).dump() << "\n";
        std::cout << "hom dimension: " << basis.size() << "\n";
    }
    if (static_cast<int>(basis.size()) != oracle) {
        std::cerr << "invariant violation: basis size " << basis.size() << " vs oracle dimension " << oracle
                  << "\n";
        return 3;
    }
    return 0;
}

int run_cone(const std::string& path, const std::string& from, const std::string& to, int index) {
    Presentation p = load(path);
    Object a = parse_string_expr(p, from);
    Object b = parse_string_expr(p, to);
    auto realized = realize_standard_basis<Rational>(p, a, b, standard_basis(p, a, b));
    if (index < 0 || index >= static_cast<int>(realized.size())) {
        std::cerr << "index out of range: basis has " << realized.size() << " elements\n";
        return 2;
    }
    ConeCheck cc = checked_cone(p, a, b, realized[index]);
    std::cout << morphism_json(p, a, b, realized[index].desc).dump() << "\n";
    if (!cc.predicted.ok) {
        std::cerr << "cone surgery failed on this input: " << cc.predicted.reason << "\n";
        return 0;
    }
    nlohmann::json j;
    j["summands"] = summands_json(p, cc.predicted.summands);
    j["verified"] = cc.matches;
    if (cc.predicted.by_fallback) j["map_by_fallback"] = true;
    std::cout << j.dump(2) << "\n";
    if (!cc.matches) {
        std::cerr << "invariant violation: predicted cone differs from the oracle cone\n";
        return 3;
    }
    return 0;
}

int run_tau(const std::string& path, const std::string& object, int power) {
    Presentation p = load(path);
    ValidationResult vr = validate_gentle(p);
    if (!vr.ok || !vr.finite_dimensional) {
        std::cerr << "rotation needs a finite dimensional gentle presentation: " << why(vr) << "\n";
        return 2;
    }
    SurfaceModel m = surface_model(p);
    std::optional<Object> cur = parse_string_expr(p, object);
    for (int i = 0; i < power && cur; ++i) cur = inverse_translate(p, m, *cur);
    std::cout << (cur ? object_text(p, *cur) : std::string("0")) << "\n";
    return 0;
}

int run_selftest(int corpus_size, unsigned seed) {
    FieldChoice fc = field_from_env();
    std::mt19937 rng(seed);
    int hom_checks = 0, cone_checks = 0, cone_fallbacks = 0, surgery_skips = 0;
    for (int t = 0; t < corpus_size; ++t) {
        Presentation p = random_gentle(rng);
        ValidationResult vr = validate_gentle(p);
        if (!vr.ok || !vr.finite_dimensional) {
            std::cerr << "selftest: generator produced a bad sample\n";
            return 3;
        }
        SurfaceModel m = surface_model(p);
        if (!same_ag(ag_invariant(p), surface_ag_pairs(m))) {
            std::cerr << "selftest: pairing and face counts disagree\n" << presentation_text(p);
            return 3;
        }
        if (!presentations_isomorphic(p, recover_algebra(m))) {
            std::cerr << "selftest: surface does not recover the presentation\n" << presentation_text(p);
            return 3;
        }
        if (!presentations_isomorphic(p, koszul_dual(koszul_dual(p)))) {
            std::cerr << "selftest: double dual differs\n" << presentation_text(p);
            return 3;
        }
        std::vector<Object> objs;
        for (GradedString& s : sample_strings(rng, p, 3)) objs.push_back(canonical_string(p, s));
        for (GradedBand& b : sample_bands(rng, p, 1)) objs.push_back(canonical_band(p, b));
        for (const Object& x : objs) {
            // arc dictionary round trip
            if (std::holds_alternative<GradedString>(x)) {
                const GradedString& s = std::get<GradedString>(x);
                GradedString back = string_from_arc(m, arc_from_string(m, s));
                if (!(string_key(p, canonical_string(p, back)) == string_key(p, s))) {
                    std::cerr << "selftest: arc round trip failed for " << to_text(p, s) << "\n"
                              << presentation_text(p);
                    return 3;
                }
            }
            for (const Object& y : objs) {
                int oracle = oracle_hom_dim(fc, p, x, y);
                auto basis = standard_basis(p, x, y);
                ++hom_checks;
                if (static_cast<int>(basis.size()) != oracle) {
                    std::cerr << "selftest: hom mismatch, basis " << basis.size() << " vs oracle " << oracle
                              << "\n  from " << object_text(p, x) << "\n  to   " << object_text(p, y)
                              << "\n" << presentation_text(p);
                    return 3;
                }
            }
        }
        if (fc.rational && objs.size() >= 2) {
            auto realized = realize_standard_basis<Rational>(p, objs[0], objs[1], standard_basis(p, objs[0], objs[1]));
            if (!realized.empty()) {
                ConeCheck cc = checked_cone(p, objs[0], objs[1], realized[0]);
                if (cc.predicted.ok) {
                    ++cone_checks;
                    if (cc.predicted.by_fallback) ++cone_fallbacks;
                    if (!cc.matches) {
                        std::cerr << "selftest: cone mismatch\n  from " << object_text(p, objs[0])
                                  << "\n  to   " << object_text(p, objs[1]) << "\n" << presentation_text(p);
                        return 3;
                    }
                } else {
                    ++surgery_skips;
                }
            }
        }
        std::cout << "sample " << (t + 1) << "/" << corpus_size << " ok\n";
    }
    std::cout << "selftest passed: " << hom_checks << " hom checks, " << cone_checks << " cone checks ("
              << cone_fallbacks << " via fallback maps), " << surgery_skips << " surgery skips\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometric model of the derived category of a gentle algebra"};
    app.require_subcommand(1);

    std::string path = "-", from, to, object;
    bool as_json = false, as_dot = false;
    int index = 0, power = 1, corpus_size = 20;
    unsigned seed = 20240816;

    auto* validate = app.add_subcommand("validate", "check the presentation is gentle");
    validate->add_option("presentation", path, "presentation file, '-' for stdin");

    auto* surface = app.add_subcommand("surface", "compute the surface model");
    surface->add_option("presentation", path);
    surface->add_flag("--json", as_json, "machine readable output");
    surface->add_flag("--dot", as_dot, "ribbon graph in graphviz form");

    auto* ag = app.add_subcommand("ag", "derived invariant, both algorithms cross checked");
    ag->add_option("presentation", path);

    auto* koszul = app.add_subcommand("koszul", "quadratic dual presentation");
    koszul->add_option("presentation", path);
    koszul->add_flag("--json", as_json);

    auto* hom = app.add_subcommand("hom", "standard morphism basis between two objects");
    hom->add_option("presentation", path);
    hom->add_option("--from", from, "source object")->required();
    hom->add_option("--to", to, "target object")->required();
    hom->add_flag("--json", as_json);

    auto* cone = app.add_subcommand("cone", "mapping cone of a standard basis morphism");
    cone->add_option("presentation", path);
    cone->add_option("--from", from)->required();
    cone->add_option("--to", to)->required();
    cone->add_option("--index", index, "basis element to resolve");

    auto* tau = app.add_subcommand("tau", "inverse translate by boundary rotation");
    tau->add_option("presentation", path);
    tau->add_option("--object", object)->required();
    tau->add_option("--power", power);

    auto* selftest = app.add_subcommand("selftest", "random cross checks of every pipeline");
    selftest->add_option("--corpus", corpus_size, "number of random presentations");
    selftest->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (validate->parsed()) return run_validate(path);
        if (surface->parsed()) return run_surface(path, as_json, as_dot);
        if (ag->parsed()) return run_ag(path);
        if (koszul->parsed()) return run_koszul(path, as_json);
        if (hom->parsed()) return run_hom(path, from, to, as_json);
        if (cone->parsed()) return run_cone(path, from, to, index);
        if (tau->parsed()) return run_tau(path, object, power);
        if (selftest->parsed()) return run_selftest(corpus_size, seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
