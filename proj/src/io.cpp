#include "fibrk/io.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fibrk {

namespace {

struct Collector {
    std::vector<Diagnostic>* diags;

    void fail(const std::string& pointer, const std::string& message) const {
        diags->push_back({pointer, message});
    }
    bool clean() const { return diags->empty(); }
};

bool get_int(const Json& v, int& out) {
    if (!v.is_number_integer()) return false;
    out = v.get<int>();
    return true;
}

std::optional<Rational> rational_of(const Json& v) {
    try {
        if (v.is_string()) return Rational::parse(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long>());
    } catch (const Error&) {
        return std::nullopt;
    }
    return std::nullopt;
}

Poly poly_of(const Json& v, const VarTableRef& vars, const Collector& c, const std::string& ptr) {
    Poly zero(vars);
    if (v.is_string() || v.is_number_integer()) {
        auto r = rational_of(v);
        if (!r) {
            c.fail(ptr, "malformed rational literal");
            return zero;
        }
        return Poly(vars, *r);
    }
    if (!v.is_array()) {
        c.fail(ptr, "polynomial must be a \"p/q\" string or an array of terms");
        return zero;
    }
    Poly result(vars);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Json& term = v[i];
        std::string tptr = ptr + "/" + std::to_string(i);
        if (!term.is_object() || !term.contains("coeff")) {
            c.fail(tptr, "term must be {exponents, coeff}");
            continue;
        }
        auto coeff = rational_of(term["coeff"]);
        if (!coeff) {
            c.fail(tptr + "/coeff", "malformed rational literal");
            continue;
        }
        Monomial mono(static_cast<std::size_t>(vars->size()), 0);
        if (term.contains("exponents")) {
            const Json& exps = term["exponents"];
            if (!exps.is_object()) {
                c.fail(tptr + "/exponents", "exponents must be an object {variable: power}");
                continue;
            }
            bool bad = false;
            for (auto it = exps.begin(); it != exps.end(); ++it) {
                if (!vars->contains(it.key())) {
                    c.fail(tptr + "/exponents/" + it.key(), "undeclared variable '" + it.key() + "'");
                    bad = true;
                    continue;
                }
                int e = -1;
                if (!get_int(it.value(), e) || e < 0) {
                    c.fail(tptr + "/exponents/" + it.key(), "exponent must be a nonnegative integer");
                    bad = true;
                    continue;
                }
                mono[static_cast<std::size_t>(vars->index(it.key()))] = e;
            }
            if (bad) continue;
        }
        result += Poly::term(vars, std::move(mono), *coeff);
    }
    return result;
}

std::optional<ClassCombo> combo_of(const Json& v, const ClassListRef& classes, const VarTableRef& vars,
                                   const Collector& c, const std::string& ptr) {
    ClassCombo combo;
    if (v.is_string()) {
        const std::string name = v.get<std::string>();
        if (!classes->contains(name)) {
            c.fail(ptr, "undeclared class '" + name + "'");
            return std::nullopt;
        }
        combo.add(classes->index(name), Poly(vars, Rational(1)));
        return combo;
    }
    if (!v.is_array()) {
        c.fail(ptr, "class combination must be a class name or an array of {class, coeff}");
        return std::nullopt;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Json& part = v[i];
        std::string pptr = ptr + "/" + std::to_string(i);
        if (!part.is_object() || !part.contains("class")) {
            c.fail(pptr, "combination part must be {class, coeff}");
            return std::nullopt;
        }
        const std::string name = part["class"].is_string() ? part["class"].get<std::string>() : "";
        if (!classes->contains(name)) {
            c.fail(pptr + "/class", "undeclared class '" + name + "'");
            return std::nullopt;
        }
        Poly coeff = part.contains("coeff") ? poly_of(part["coeff"], vars, c, pptr + "/coeff")
                                            : Poly(vars, Rational(1));
        combo.add(classes->index(name), coeff);
    }
    return combo;
}

FibrationComponent fibration_component_of(const Json& v, int n, int m, const Collector& c,
                                          const std::string& ptr) {
    FibrationComponent comp;
    comp.n = n;
    comp.m = m;
    if (v.contains("mixed_volumes")) {
        const Json& mixed = v["mixed_volumes"];
        if (!mixed.is_object()) {
            c.fail(ptr + "/mixed_volumes", "mixed_volumes must be an object {\"i\": \"p/q\"}");
        } else {
            for (auto it = mixed.begin(); it != mixed.end(); ++it) {
                std::string kptr = ptr + "/mixed_volumes/" + it.key();
                int i = -1;
                try {
                    i = std::stoi(it.key());
                } catch (...) {
                    c.fail(kptr, "mixed-volume key must be the integer i of H^(m+i)L^(n-i)");
                    continue;
                }
                if (i < 0 || i > n) {
                    c.fail(kptr, "mixed-volume index out of [0, n]");
                    continue;
                }
                auto r = rational_of(it.value());
                if (!r) {
                    c.fail(kptr, "malformed rational literal");
                    continue;
                }
                comp.mixed.emplace(i, *r);
            }
        }
    }
    if (v.contains("canonical_products")) {
        const Json& can = v["canonical_products"];
        if (!can.is_array()) {
            c.fail(ptr + "/canonical_products", "canonical_products must be an array of {h, l, value}");
        } else {
            for (std::size_t i = 0; i < can.size(); ++i) {
                std::string kptr = ptr + "/canonical_products/" + std::to_string(i);
                const Json& entry = can[i];
                int a = -1, b = -1;
                if (!entry.is_object() || !entry.contains("h") || !entry.contains("l") ||
                    !entry.contains("value") || !get_int(entry["h"], a) || !get_int(entry["l"], b)) {
                    c.fail(kptr, "canonical product must be {h, l, value}");
                    continue;
                }
                if (a < 0 || b < 0 || a + b != n + m - 1 || b > n) {
                    c.fail(kptr, "canonical product K*H^h*L^l needs h+l = n+m-1 and l <= n");
                    continue;
                }
                auto r = rational_of(entry["value"]);
                if (!r) {
                    c.fail(kptr + "/value", "malformed rational literal");
                    continue;
                }
                comp.canonical.emplace(std::make_pair(a, b), *r);
            }
        }
    }
    if (v.contains("fiber_volume")) {
        auto r = rational_of(v["fiber_volume"]);
        if (!r)
            c.fail(ptr + "/fiber_volume", "malformed rational literal");
        else
            comp.fiber_volume = *r;
    }
    return comp;
}

std::optional<DatumFile> parse_datum(const Json& doc, std::vector<Diagnostic>& diags) {
    Collector c{&diags};
    if (!doc.is_object()) {
        c.fail("", "datum must be a JSON object");
        return std::nullopt;
    }
    int n = -1, m = -1, total_degree = -1;
    if (!doc.contains("n") || !get_int(doc["n"], n) || n < 0) c.fail("/n", "n must be a nonnegative integer");
    if (!doc.contains("m") || !get_int(doc["m"], m) || m < 0) c.fail("/m", "m must be a nonnegative integer");
    if (!doc.contains("total_degree") || !get_int(doc["total_degree"], total_degree) || total_degree <= 0)
        c.fail("/total_degree", "total_degree must be a positive integer");
    if (n >= 0 && m >= 0 && total_degree > 0 && total_degree != n + m + 1)
        c.fail("/total_degree", "total_degree must equal n+m+1 (dim of the compactified total space)");

    // Variable universe: eps and j are built in; the rest is declared.
    std::vector<std::string> var_names{"eps", "j"};
    if (doc.contains("variables")) {
        if (!doc["variables"].is_array()) {
            c.fail("/variables", "variables must be an array of names");
        } else {
            for (std::size_t i = 0; i < doc["variables"].size(); ++i) {
                const Json& name = doc["variables"][i];
                if (!name.is_string() || name.get<std::string>().empty()) {
                    c.fail("/variables/" + std::to_string(i), "variable name must be a nonempty string");
                    continue;
                }
                std::string s = name.get<std::string>();
                if (std::find(var_names.begin(), var_names.end(), s) != var_names.end()) {
                    c.fail("/variables/" + std::to_string(i), "duplicate variable '" + s + "'");
                    continue;
                }
                var_names.push_back(s);
            }
        }
    }
    VarTableRef vars = make_vars(var_names);

    std::vector<std::string> class_names;
    if (!doc.contains("classes") || !doc["classes"].is_array() || doc["classes"].empty()) {
        c.fail("/classes", "classes must be a nonempty array of names");
    } else {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < doc["classes"].size(); ++i) {
            const Json& name = doc["classes"][i];
            if (!name.is_string() || name.get<std::string>().empty()) {
                c.fail("/classes/" + std::to_string(i), "class name must be a nonempty string");
                continue;
            }
            if (!seen.insert(name.get<std::string>()).second) {
                c.fail("/classes/" + std::to_string(i), "duplicate class '" + name.get<std::string>() + "'");
                continue;
            }
            class_names.push_back(name.get<std::string>());
        }
    }
    if (class_names.empty() || total_degree <= 0) return std::nullopt;
    auto classes = std::make_shared<const ClassList>(class_names);

    IntersectionTable table(classes, vars, total_degree);
    if (doc.contains("zero_default")) {
        if (!doc["zero_default"].is_array()) {
            c.fail("/zero_default", "zero_default must be an array of patterns");
        } else {
            for (std::size_t i = 0; i < doc["zero_default"].size(); ++i) {
                const Json& pat = doc["zero_default"][i];
                std::string pptr = "/zero_default/" + std::to_string(i);
                if (!pat.is_object() || pat.empty()) {
                    c.fail(pptr, "pattern must be a nonempty object {class: min_exponent}");
                    continue;
                }
                ZeroPattern pattern;
                bool bad = false;
                for (auto it = pat.begin(); it != pat.end(); ++it) {
                    if (!classes->contains(it.key())) {
                        c.fail(pptr + "/" + it.key(), "undeclared class '" + it.key() + "'");
                        bad = true;
                        continue;
                    }
                    int e = -1;
                    if (!get_int(it.value(), e) || e < 0) {
                        c.fail(pptr + "/" + it.key(), "minimum exponent must be a nonnegative integer");
                        bad = true;
                        continue;
                    }
                    pattern.min_exponents.emplace(classes->index(it.key()), e);
                }
                if (!bad) table.add_zero_default(std::move(pattern));
            }
        }
    }

    if (doc.contains("products")) {
        if (!doc["products"].is_array()) {
            c.fail("/products", "products must be an array of {exponents, value}");
        } else {
            for (std::size_t i = 0; i < doc["products"].size(); ++i) {
                const Json& row = doc["products"][i];
                std::string rptr = "/products/" + std::to_string(i);
                if (!row.is_object() || !row.contains("exponents") || !row.contains("value")) {
                    c.fail(rptr, "product must be {exponents, value}");
                    continue;
                }
                const Json& exps = row["exponents"];
                if (!exps.is_object()) {
                    c.fail(rptr + "/exponents", "exponents must be an object {class: power}");
                    continue;
                }
                ClassMono mono(static_cast<std::size_t>(classes->size()), 0);
                bool bad = false;
                int degree = 0;
                std::string mono_name;
                for (auto it = exps.begin(); it != exps.end(); ++it) {
                    if (!classes->contains(it.key())) {
                        c.fail(rptr + "/exponents/" + it.key(), "undeclared class '" + it.key() + "'");
                        bad = true;
                        continue;
                    }
                    int e = -1;
                    if (!get_int(it.value(), e) || e < 0) {
                        c.fail(rptr + "/exponents/" + it.key(), "exponent must be a nonnegative integer");
                        bad = true;
                        continue;
                    }
                    mono[static_cast<std::size_t>(classes->index(it.key()))] = e;
                    degree += e;
                    if (!mono_name.empty()) mono_name += "*";
                    mono_name += it.key() + (e > 1 ? "^" + std::to_string(e) : "");
                }
                if (bad) continue;
                if (degree != total_degree) {
                    c.fail(rptr, "monomial " + (mono_name.empty() ? std::string("1") : mono_name) +
                                     " has degree " + std::to_string(degree) + ", table degree is " +
                                     std::to_string(total_degree));
                    continue;
                }
                if (table.has(mono)) {
                    c.fail(rptr, "duplicate monomial " + mono_name);
                    continue;
                }
                table.set(std::move(mono), poly_of(row["value"], vars, c, rptr + "/value"));
            }
        }
    }

    DatumFile file{TestConfigDatum(std::move(table)), {}};
    TestConfigDatum& datum = file.datum;
    datum.fibration.n = n;
    datum.fibration.m = m;

    if (doc.contains("exceptionals")) {
        if (!doc["exceptionals"].is_array()) {
            c.fail("/exceptionals", "exceptionals must be an array of {class, b, A}");
        } else {
            for (std::size_t i = 0; i < doc["exceptionals"].size(); ++i) {
                const Json& e = doc["exceptionals"][i];
                std::string eptr = "/exceptionals/" + std::to_string(i);
                if (!e.is_object() || !e.contains("class")) {
                    c.fail(eptr, "exceptional must be {class, b, A}");
                    continue;
                }
                const std::string name = e["class"].is_string() ? e["class"].get<std::string>() : "";
                if (!classes->contains(name)) {
                    c.fail(eptr + "/class", "undeclared class '" + name + "'");
                    continue;
                }
                Exceptional exc;
                exc.cls = classes->index(name);
                if (e.contains("b")) {
                    int b = -1;
                    if (!get_int(e["b"], b) || b < 1) {
                        c.fail(eptr + "/b", "multiplicity b must be a positive integer");
                        continue;
                    }
                    exc.multiplicity = b;
                }
                if (e.contains("A")) {
                    auto r = rational_of(e["A"]);
                    if (!r) {
                        c.fail(eptr + "/A", "malformed rational literal");
                        continue;
                    }
                    exc.discrepancy = *r;
                }
                datum.exceptionals.push_back(exc);
            }
        }
    }

    if (!doc.contains("roles") || !doc["roles"].is_object()) {
        c.fail("/roles", "roles object with at least a polarization is required");
    } else {
        const Json& roles = doc["roles"];
        if (!roles.contains("polarization")) {
            c.fail("/roles/polarization", "polarization role is required");
        } else if (auto combo = combo_of(roles["polarization"], classes, vars, c, "/roles/polarization")) {
            datum.polarization = *combo;
        }
        if (roles.contains("base_pullback")) {
            const Json& bp = roles["base_pullback"];
            if (!bp.is_string() || !classes->contains(bp.get<std::string>()))
                c.fail("/roles/base_pullback", "base_pullback must name a declared class");
            else
                datum.base_pullback = classes->index(bp.get<std::string>());
        }
        if (roles.contains("klog")) {
            if (auto combo = combo_of(roles["klog"], classes, vars, c, "/roles/klog"))
                datum.klog = *combo;
        }
        if (roles.contains("excess")) {
            const Json& ex = roles["excess"];
            if (!ex.is_string() || !classes->contains(ex.get<std::string>()))
                c.fail("/roles/excess", "excess must name a declared class");
            else
                datum.excess_class = classes->index(ex.get<std::string>());
        }
        if (roles.contains("trivial_pullback")) {
            if (auto combo = combo_of(roles["trivial_pullback"], classes, vars, c, "/roles/trivial_pullback"))
                datum.trivial_pullback = *combo;
        }
    }
    if (datum.trivial_pullback.empty() && !datum.polarization.empty()) {
        try {
            datum.trivial_pullback =
                infer_trivial_pullback(datum.table, datum.polarization, datum.exceptionals);
        } catch (const Error& e) {
            c.fail("/roles/trivial_pullback", e.what());
        }
    }

    if (doc.contains("flags")) {
        const Json& flags = doc["flags"];
        if (!flags.is_object()) {
            c.fail("/flags", "flags must be an object");
        } else {
            if (flags.contains("normalized")) {
                if (!flags["normalized"].is_boolean())
                    c.fail("/flags/normalized", "normalized must be a boolean");
                else
                    datum.declared_normalized = flags["normalized"].get<bool>();
            }
            if (flags.contains("trivial")) {
                if (!flags["trivial"].is_boolean())
                    c.fail("/flags/trivial", "trivial must be a boolean");
                else
                    datum.declared_trivial = flags["trivial"].get<bool>();
            }
        }
    }

    if (doc.contains("fibration")) {
        if (!doc["fibration"].is_object()) {
            c.fail("/fibration", "fibration must be an object");
        } else {
            FibrationComponent base = fibration_component_of(doc["fibration"], n, m, c, "/fibration");
            datum.fibration.mixed = std::move(base.mixed);
            datum.fibration.canonical = std::move(base.canonical);
            datum.fibration.fiber_volume = base.fiber_volume;
            if (doc["fibration"].contains("components")) {
                const Json& comps = doc["fibration"]["components"];
                if (!comps.is_array()) {
                    c.fail("/fibration/components", "components must be an array");
                } else {
                    for (std::size_t i = 0; i < comps.size(); ++i) {
                        std::string cptr = "/fibration/components/" + std::to_string(i);
                        int cn = n, cm = m;
                        if (comps[i].contains("n")) get_int(comps[i]["n"], cn);
                        if (comps[i].contains("m")) get_int(comps[i]["m"], cm);
                        datum.fibration.components.push_back(
                            fibration_component_of(comps[i], cn, cm, c, cptr));
                    }
                }
            }
        }
    }

    if (doc.contains("analysis")) {
        const Json& an = doc["analysis"];
        if (!an.is_object()) {
            c.fail("/analysis", "analysis must be an object");
        } else {
            if (an.contains("levels_zero")) {
                if (!an["levels_zero"].is_array()) {
                    c.fail("/analysis/levels_zero", "levels_zero must be an array of levels");
                } else {
                    for (std::size_t i = 0; i < an["levels_zero"].size(); ++i) {
                        int level = -1;
                        if (!get_int(an["levels_zero"][i], level) || level < 0 || level > n)
                            c.fail("/analysis/levels_zero/" + std::to_string(i), "level out of [0, n]");
                        else
                            file.analysis.levels_zero.push_back(level);
                    }
                }
            }
            if (an.contains("fano_identity")) {
                const Json& fano = an["fano_identity"];
                if (!fano.is_object() || !fano.contains("k") || !fano.contains("lambda")) {
                    c.fail("/analysis/fano_identity", "fano_identity must be {k, lambda, lower_cuts_trivial}");
                } else {
                    int k = -1;
                    if (!get_int(fano["k"], k) || k < 0 || k > n)
                        c.fail("/analysis/fano_identity/k", "level k out of [0, n]");
                    else
                        file.analysis.fano_k = k;
                    auto r = rational_of(fano["lambda"]);
                    if (!r)
                        c.fail("/analysis/fano_identity/lambda", "malformed rational literal");
                    else
                        file.analysis.fano_lambda = *r;
                    if (fano.contains("lower_cuts_trivial") && fano["lower_cuts_trivial"].is_boolean())
                        file.analysis.lower_cuts_trivial = fano["lower_cuts_trivial"].get<bool>();
                }
            }
        }
    }

    if (!diags.empty()) return std::nullopt;
    return file;
}

}  // namespace

std::vector<Diagnostic> validate_datum(const Json& doc) {
    std::vector<Diagnostic> diags;
    parse_datum(doc, diags);
    return diags;
}

DatumFile load_datum(const Json& doc) {
    std::vector<Diagnostic> diags;
    auto file = parse_datum(doc, diags);
    if (!file) {
        const Diagnostic& first = diags.empty() ? Diagnostic{"", "unloadable datum"} : diags.front();
        throw SchemaError(first.pointer, first.message);
    }
    return std::move(*file);
}

bool is_catalog(const Json& doc) {
    if (doc.is_array()) return true;
    return doc.is_object() && !doc.contains("classes") &&
           (doc.contains("components") || doc.contains("catalog"));
}

bool is_scalar_components(const Json& doc) {
    return doc.is_object() && doc.contains("scalar_components");
}

namespace {

std::optional<CatalogEntry> parse_catalog_entry(const Json& doc, int default_truncation,
                                                std::vector<Diagnostic>& diags,
                                                const std::string& ptr) {
    Collector c{&diags};
    if (!doc.is_object()) {
        c.fail(ptr, "degeneration datum must be a JSON object");
        return std::nullopt;
    }
    CatalogEntry entry;
    NormalConeDatum& datum = entry.datum;
    datum.truncation_order = default_truncation;
    if (!doc.contains("N") || !get_int(doc["N"], datum.N) || datum.N < 1)
        c.fail(ptr + "/N", "N (dim X) must be a positive integer");
    if (doc.contains("n") && (!get_int(doc["n"], datum.n) || datum.n < 0))
        c.fail(ptr + "/n", "n (dim B) must be a nonnegative integer");
    if (doc.contains("V")) {
        auto r = rational_of(doc["V"]);
        if (!r)
            c.fail(ptr + "/V", "malformed rational literal");
        else
            datum.volume = *r;
    }
    if (doc.contains("truncation") && (!get_int(doc["truncation"], datum.truncation_order) ||
                                       datum.truncation_order < 0))
        c.fail(ptr + "/truncation", "truncation must be a nonnegative integer");
    if (doc.contains("level")) {
        int level = -1;
        if (!get_int(doc["level"], level) || level < 0)
            c.fail(ptr + "/level", "level must be a nonnegative integer");
        else
            entry.level = level;
    }
    if (doc.contains("lambda")) {
        auto r = rational_of(doc["lambda"]);
        if (!r)
            c.fail(ptr + "/lambda", "malformed rational literal");
        else
            entry.lambda = *r;
    }
    if (doc.contains("components")) {
        if (!doc["components"].is_array()) {
            c.fail(ptr + "/components", "components must be an array");
        } else {
            for (std::size_t i = 0; i < doc["components"].size(); ++i) {
                const Json& comp = doc["components"][i];
                std::string cptr = ptr + "/components/" + std::to_string(i);
                NormalConeComponent out;
                if (!comp.is_object() || !comp.contains("codim") || !comp.contains("deg") ||
                    !comp.contains("center")) {
                    c.fail(cptr, "component must be {codim, m, deg, center, A, fiber_type}");
                    continue;
                }
                if (!get_int(comp["codim"], out.codim)) c.fail(cptr + "/codim", "codim must be an integer");
                if (comp.contains("m")) {
                    int mult = -1;
                    if (!get_int(comp["m"], mult) || mult < 1)
                        c.fail(cptr + "/m", "multiplicity m must be a positive integer");
                    else
                        out.multiplicity = mult;
                }
                auto deg = rational_of(comp["deg"]);
                auto center = rational_of(comp["center"]);
                if (!deg) c.fail(cptr + "/deg", "malformed rational literal");
                if (!center) c.fail(cptr + "/center", "malformed rational literal");
                if (deg) out.deg_e = *deg;
                if (center) out.center_degree = *center;
                if (comp.contains("A")) {
                    auto r = rational_of(comp["A"]);
                    if (!r)
                        c.fail(cptr + "/A", "malformed rational literal");
                    else
                        out.discrepancy = *r;
                }
                if (comp.contains("fiber_type")) {
                    if (!comp["fiber_type"].is_boolean())
                        c.fail(cptr + "/fiber_type", "fiber_type must be a boolean");
                    else
                        out.fiber_type = comp["fiber_type"].get<bool>();
                }
                if (comp.contains("codim_base")) {
                    int cb = -1;
                    if (!get_int(comp["codim_base"], cb) || cb < 0)
                        c.fail(cptr + "/codim_base", "codim_base must be a nonnegative integer");
                    else
                        out.codim_base = cb;
                }
                datum.components.push_back(out);
            }
        }
    }
    if (!diags.empty()) return std::nullopt;
    try {
        datum.validate();
    } catch (const Error& e) {
        c.fail(ptr, e.what());
        return std::nullopt;
    }
    return entry;
}

}  // namespace

std::vector<Diagnostic> validate_catalog(const Json& doc) {
    std::vector<Diagnostic> diags;
    if (doc.is_array()) {
        for (std::size_t i = 0; i < doc.size(); ++i)
            parse_catalog_entry(doc[i], 4, diags, "/" + std::to_string(i));
    } else if (doc.is_object() && doc.contains("catalog") && doc["catalog"].is_array()) {
        for (std::size_t i = 0; i < doc["catalog"].size(); ++i)
            parse_catalog_entry(doc["catalog"][i], 4, diags, "/catalog/" + std::to_string(i));
    } else {
        parse_catalog_entry(doc, 4, diags, "");
    }
    return diags;
}

std::vector<CatalogEntry> load_catalog(const Json& doc, int default_truncation) {
    std::vector<Diagnostic> diags;
    std::vector<CatalogEntry> out;
    auto take = [&](const Json& entry, const std::string& ptr) {
        auto parsed = parse_catalog_entry(entry, default_truncation, diags, ptr);
        if (!parsed) {
            const Diagnostic& first = diags.empty() ? Diagnostic{ptr, "unloadable datum"} : diags.front();
            throw SchemaError(first.pointer, first.message);
        }
        out.push_back(std::move(*parsed));
    };
    if (doc.is_array()) {
        for (std::size_t i = 0; i < doc.size(); ++i) take(doc[i], "/" + std::to_string(i));
    } else if (doc.is_object() && doc.contains("catalog") && doc["catalog"].is_array()) {
        for (std::size_t i = 0; i < doc["catalog"].size(); ++i)
            take(doc["catalog"][i], "/catalog/" + std::to_string(i));
    } else {
        take(doc, "");
    }
    return out;
}

std::vector<ComponentScalarData> load_scalar_components(const Json& doc) {
    if (!is_scalar_components(doc) || !doc["scalar_components"].is_array())
        throw SchemaError("/scalar_components", "scalar_components must be an array");
    std::vector<ComponentScalarData> out;
    const Json& arr = doc["scalar_components"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string ptr = "/scalar_components/" + std::to_string(i);
        const Json& comp = arr[i];
        if (!comp.is_object() || !comp.contains("S") || !comp.contains("base_volume") ||
            !comp.contains("fiber_volume"))
            throw SchemaError(ptr, "component must be {S, base_volume, fiber_volume}");
        auto s = rational_of(comp["S"]);
        auto bv = rational_of(comp["base_volume"]);
        auto fv = rational_of(comp["fiber_volume"]);
        if (!s) throw SchemaError(ptr + "/S", "malformed rational literal");
        if (!bv) throw SchemaError(ptr + "/base_volume", "malformed rational literal");
        if (!fv) throw SchemaError(ptr + "/fiber_volume", "malformed rational literal");
        out.push_back({*s, *bv, *fv});
    }
    return out;
}

SignHypotheses parse_sign_flags(const std::vector<std::string>& flags) {
    SignHypotheses hyp;
    for (const std::string& flag : flags) {
        auto pos = flag.find_first_of("<>");
        if (pos == std::string::npos || pos == 0 || pos + 2 != flag.size() || flag[pos + 1] != '0')
            throw Error(ErrorKind::ValidationFailed,
                        "sign declaration must look like name>0 or name<0, got '" + flag + "'");
        hyp.signs[flag.substr(0, pos)] = flag[pos] == '>' ? 1 : -1;
    }
    return hyp;
}

OJson poly_json(const Poly& p) {
    OJson terms = OJson::array();
    for (const auto& [mono, coeff] : p.terms()) {
        OJson exps = OJson::object();
        for (int v = 0; v < static_cast<int>(mono.size()); ++v)
            if (mono[static_cast<std::size_t>(v)] > 0)
                exps[p.vars()->name(v)] = mono[static_cast<std::size_t>(v)];
        terms.push_back(OJson{{"exponents", std::move(exps)}, {"coeff", coeff.str()}});
    }
    return terms;
}

OJson rationalfn_json(const RationalFn& fn) {
    return OJson{{"num", poly_json(fn.num())}, {"den", poly_json(fn.den())}, {"str", fn.str()}};
}

OJson verdict_json(const StabilityVerdict& v) {
    OJson out;
    out["kind"] = to_string(v.kind);
    if (v.witness)
        out["witness"] = OJson{{"level", v.witness->level}, {"sign", v.witness->sign}};
    else
        out["witness"] = nullptr;
    OJson analyses = OJson::array();
    for (const EpsAnalysis& a : v.epsilon_validity)
        analyses.push_back(OJson{{"level", a.level}, {"order", a.order}, {"leading", a.leading}});
    out["epsilon_validity"] = std::move(analyses);
    out["witnesses_instability"] = v.witnesses_instability;
    out["detail"] = v.detail;
    return out;
}

namespace {

std::string poly_approx(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, coeff] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << coeff.approx();
        for (int v = 0; v < static_cast<int>(mono.size()); ++v) {
            int e = mono[static_cast<std::size_t>(v)];
            if (e == 0) continue;
            os << "*" << p.vars()->name(v);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

void put_poly(OJson& out, const std::string& key, const Poly& p, bool approx) {
    out[key] = poly_json(p);
    out[key + "_str"] = p.str();
    if (approx) out[key + "_approx"] = poly_approx(p);
}

}  // namespace

OJson report_json(const FunctionalReport& report, bool has_mabuchi, bool approx) {
    OJson out;
    out["volume"] = report.volume.str();
    put_poly(out, "e_na", report.e_na, approx);
    put_poly(out, "i_na", report.i_na, approx);
    put_poly(out, "j_na", report.j_na, approx);
    put_poly(out, "h_na", report.h_na, approx);
    if (has_mabuchi) {
        put_poly(out, "r_na", report.r_na, approx);
        put_poly(out, "m_na", report.m_na, approx);
        put_poly(out, "df", report.df, approx);
    }
    if (!report.identities_checked.empty()) {
        OJson checks = OJson::array();
        for (const IdentityCheck& check : report.identities_checked)
            checks.push_back(OJson{{"name", check.name}, {"holds", check.holds}, {"note", check.note}});
        out["identities_checked"] = std::move(checks);
    }
    return out;
}

OJson wtable_json(const WDecomposition& dec, const StabilityVerdict& v,
                  const std::vector<std::string>& notes, bool approx) {
    OJson out;
    OJson w = OJson::array();
    OJson w_str = OJson::array();
    for (const Poly& wi : dec.w) {
        w.push_back(poly_json(wi));
        w_str.push_back(wi.str());
    }
    out["n"] = dec.n;
    out["w"] = std::move(w);
    out["w_str"] = std::move(w_str);
    if (approx) {
        OJson w_approx = OJson::array();
        for (const Poly& wi : dec.w) w_approx.push_back(poly_approx(wi));
        out["w_approx"] = std::move(w_approx);
    }
    out["remainder"] = rationalfn_json(dec.remainder);
    out["verdict"] = verdict_json(v);
    if (!notes.empty()) out["notes"] = notes;
    return out;
}

std::string report_text(const FunctionalReport& report, bool has_mabuchi, bool approx) {
    std::ostringstream os;
    os << "volume: " << report.volume.str() << "\n";
    auto line = [&](const char* name, const Poly& p) {
        os << name << " = " << p.str();
        if (approx) os << "   (~ " << poly_approx(p) << ")";
        os << "\n";
    };
    line("E^NA ", report.e_na);
    line("I^NA ", report.i_na);
    line("J^NA ", report.j_na);
    line("H^NA ", report.h_na);
    if (has_mabuchi) {
        line("R^NA ", report.r_na);
        line("M^NA ", report.m_na);
        line("DF   ", report.df);
    }
    for (const IdentityCheck& check : report.identities_checked)
        os << (check.holds ? "[ok]   " : "[FAIL] ") << check.name
           << (check.note.empty() ? "" : " (" + check.note + ")") << "\n";
    return os.str();
}

std::string wtable_text(const WDecomposition& dec, const StabilityVerdict& v,
                        const std::vector<std::string>& notes, bool approx) {
    std::vector<std::string> rendered;
    rendered.reserve(dec.w.size());
    for (const Poly& wi : dec.w) rendered.push_back(wi.str());
    std::size_t width = 5;
    for (const std::string& s : rendered) width = std::max(width, s.size());
    std::ostringstream os;
    os << "level  W\n";
    for (std::size_t i = 0; i < rendered.size(); ++i) {
        os << i;
        for (std::size_t pad = std::to_string(i).size(); pad < 7; ++pad) os << ' ';
        os << rendered[i];
        if (approx) os << "   (~ " << poly_approx(dec.w[i]) << ")";
        os << "\n";
    }
    os << "remainder: " << dec.remainder.str() << "\n";
    os << "verdict: " << to_string(v.kind) << " -- " << v.detail << "\n";
    for (const std::string& note : notes) os << "note: " << note << "\n";
    return os.str();
}

std::string diagnostics_text(const std::vector<Diagnostic>& diags) {
    std::ostringstream os;
    if (diags.empty()) {
        os << "valid: no diagnostics\n";
        return os.str();
    }
    for (const Diagnostic& d : diags) os << d.pointer << ": " << d.message << "\n";
    return os.str();
}

WtableResult wtable_for(const DatumFile& file, const SignHypotheses& signs) {
    const TestConfigDatum& datum = file.datum;
    if (datum.klog) {
        WtableResult result{w_decompose(mabuchi_rational_fn(datum), datum.n()),
                            StabilityVerdict{}, {}, true};
        result.verdict = verdict(result.dec, datum.declared_trivial, signs);
        return result;
    }
    // Identity route: declared-zero levels plus one Fano-identity level must
    // cover W_0..W_n.
    const AnalysisHints& hints = file.analysis;
    if (hints.empty())
        throw Error(ErrorKind::MissingIntersectionNumber,
                    "datum has no klog role and no analysis hints; the W table is not computable");
    const VarTableRef& vars = datum.table.vars();
    std::vector<std::optional<Poly>> levels(static_cast<std::size_t>(datum.n()) + 1);
    for (int level : hints.levels_zero) levels[static_cast<std::size_t>(level)] = Poly(vars);
    WtableResult result{WDecomposition{{}, RationalFn(Poly(vars), Poly(vars, Rational(1)), "j"), datum.n()},
                        StabilityVerdict{}, {}, false};
    if (hints.fano_k) {
        if (!hints.fano_lambda)
            throw Error(ErrorKind::PreconditionUnverifiable, "fano_identity hint without lambda");
        levels[static_cast<std::size_t>(*hints.fano_k)] =
            w_k_via_fano_identity(datum, *hints.fano_k, *hints.fano_lambda, hints.lower_cuts_trivial);
        result.notes.push_back("W_" + std::to_string(*hints.fano_k) +
                               " computed through the Fano identity (lambda = " +
                               hints.fano_lambda->str() + ")");
    }
    for (int i = 0; i <= datum.n(); ++i) {
        if (!levels[static_cast<std::size_t>(i)])
            throw Error(ErrorKind::PreconditionUnverifiable,
                        "analysis hints leave W_" + std::to_string(i) + " undetermined");
        result.dec.w.push_back(*levels[static_cast<std::size_t>(i)]);
    }
    if (!hints.levels_zero.empty())
        result.notes.push_back("declared-zero levels come from cut-triviality assertions in the input");
    result.notes.push_back("remainder not computed on the identity route");
    result.verdict = verdict(result.dec, datum.declared_trivial, signs);
    return result;
}

OJson run_functionals(const DatumFile& file, bool check, bool approx) {
    FunctionalReport report = functional_report(file.datum, check);
    OJson out = report_json(report, file.datum.klog.has_value(), approx);
    if (check && file.datum.fibration.components.size() >= 2) {
        auto scalar = scalar_components_of(file.datum.fibration);
        if (scalar.size() == file.datum.fibration.components.size())
            out["same_scalar"] = run_scalar_components(scalar);
    }
    return out;
}

OJson run_wtable(const DatumFile& file, const SignHypotheses& signs, bool approx) {
    WtableResult result = wtable_for(file, signs);
    return wtable_json(result.dec, result.verdict, result.notes, approx);
}

OJson run_catalog(const std::vector<CatalogEntry>& entries, std::optional<int> level_override,
                  std::optional<Rational> lambda_override, bool approx) {
    OJson out = OJson::array();
    for (const CatalogEntry& entry : entries) {
        const NormalConeDatum& datum = entry.datum;
        OJson item;
        item["N"] = datum.N;
        item["n"] = datum.n;
        item["volume"] = datum.volume.str();
        item["truncation"] = datum.truncation_order;
        auto [i_series, j_series] = i_j_series(datum);
        put_poly(item, "i_na", i_series, approx);
        put_poly(item, "j_na", j_series, approx);
        put_poly(item, "entropy", entropy_series(datum), approx);
        if (!datum.components.empty()) {
            auto [order, coeff] = fano_leading(datum, datum.n);
            item["fano_leading"] = OJson{{"order", order}, {"coefficient", coeff.str()}};
        }
        std::optional<int> level = level_override ? level_override : entry.level;
        bool have_codim_base =
            !datum.components.empty() &&
            std::all_of(datum.components.begin(), datum.components.end(),
                        [](const NormalConeComponent& c) { return c.codim_base.has_value(); });
        if (level || have_codim_base || datum.components.empty())
            item["lc_obstruction"] = verdict_json(lc_obstruction(datum, level));
        else
            item["lc_obstruction"] = OJson{{"kind", "NotRun"},
                                           {"detail", "no level supplied and codim_base data incomplete"}};
        std::optional<Rational> lambda = lambda_override ? lambda_override : entry.lambda;
        bool all_zero_a = std::all_of(datum.components.begin(), datum.components.end(),
                                      [](const NormalConeComponent& c) { return c.discrepancy.is_zero(); });
        if (lambda && all_zero_a)
            item["fano_fiber_type_obstruction"] =
                verdict_json(fano_fiber_type_obstruction(datum, datum.n, *lambda));
        out.push_back(std::move(item));
    }
    return out;
}

OJson run_scalar_components(const std::vector<ComponentScalarData>& components) {
    SameScalarResult result = same_scalar_check(components);
    OJson out;
    out["equal"] = result.equal;
    if (result.w0_leading_sign)
        out["w0_leading_sign"] = *result.w0_leading_sign;
    else
        out["w0_leading_sign"] = nullptr;
    out["leading_coefficient"] = result.leading_coefficient.str();
    out["detail"] = result.equal
                        ? "components share the fiber scalar curvature; no obstruction from this check"
                        : "unequal fiber scalar curvatures: W_0 = eps*eta*(leading_coefficient) + "
                          "O(eps^2) < 0, f-unstable";
    return out;
}

std::string catalog_text(const OJson& report) {
    std::ostringstream os;
    for (std::size_t i = 0; i < report.size(); ++i) {
        const OJson& item = report[i];
        os << "datum " << i << " (N=" << item["N"] << ", n=" << item["n"] << ")\n";
        os << "  I^NA    = " << item["i_na_str"].get<std::string>() << "\n";
        os << "  J^NA    = " << item["j_na_str"].get<std::string>() << "\n";
        os << "  entropy = " << item["entropy_str"].get<std::string>() << "\n";
        if (item.contains("fano_leading"))
            os << "  V(I-(n+1)J) leading: order " << item["fano_leading"]["order"] << ", coefficient "
               << item["fano_leading"]["coefficient"].get<std::string>() << "\n";
        if (item.contains("lc_obstruction"))
            os << "  lc obstruction: " << item["lc_obstruction"]["kind"].get<std::string>() << " -- "
               << item["lc_obstruction"]["detail"].get<std::string>() << "\n";
        if (item.contains("fano_fiber_type_obstruction"))
            os << "  fano fiber-type: "
               << item["fano_fiber_type_obstruction"]["kind"].get<std::string>() << " -- "
               << item["fano_fiber_type_obstruction"]["detail"].get<std::string>() << "\n";
    }
    return os.str();
}

std::string scalar_text(const OJson& report) {
    std::ostringstream os;
    os << "same scalar curvature: " << (report["equal"].get<bool>() ? "yes" : "no") << "\n";
    if (!report["w0_leading_sign"].is_null())
        os << "W_0 leading sign: " << report["w0_leading_sign"].get<int>() << " (coefficient "
           << report["leading_coefficient"].get<std::string>() << ")\n";
    os << report["detail"].get<std::string>() << "\n";
    return os.str();
}

}  // namespace fibrk
