#include "fibrk/examples.hpp"

#include <sstream>

namespace fibrk {

namespace {

const char* kLcBase = R"json({
  "n": 2, "m": 1, "total_degree": 4,
  "classes": ["H", "E"],
  "variables": ["t"],
  "products": [
    {"exponents": {"H": 4}, "value": "0"},
    {"exponents": {"H": 3, "E": 1}, "value": "0"},
    {"exponents": {"H": 2, "E": 2}, "value": "0"},
    {"exponents": {"H": 1, "E": 3}, "value": [{"exponents": {"t": 1}, "coeff": "1"}]},
    {"exponents": {"E": 4}, "value": "0"}
  ],
  "exceptionals": [{"class": "E", "b": 1, "A": "0"}],
  "roles": {
    "polarization": [
      {"class": "H", "coeff": "1"},
      {"class": "E", "coeff": [{"exponents": {"eps": 1}, "coeff": "-1"}]}
    ],
    "trivial_pullback": "H"
  },
  "flags": {"normalized": true, "trivial": false},
  "fibration": {"mixed_volumes": {"2": "1"}},
  "analysis": {
    "levels_zero": [0, 1],
    "fano_identity": {"k": 2, "lambda": "1", "lower_cuts_trivial": true}
  }
})json";

const char* kLcBaseSymbolic = R"json({
  "n": 2, "m": 1, "total_degree": 4,
  "classes": ["H", "E"],
  "variables": ["t", "u"],
  "products": [
    {"exponents": {"H": 4}, "value": "0"},
    {"exponents": {"H": 3, "E": 1}, "value": "0"},
    {"exponents": {"H": 2, "E": 2}, "value": "0"},
    {"exponents": {"H": 1, "E": 3}, "value": [{"exponents": {"t": 1}, "coeff": "1"}]},
    {"exponents": {"E": 4}, "value": [{"exponents": {"u": 1}, "coeff": "1"}]}
  ],
  "exceptionals": [{"class": "E", "b": 1, "A": "0"}],
  "roles": {
    "polarization": [
      {"class": "H", "coeff": "1"},
      {"class": "E", "coeff": [{"exponents": {"eps": 1}, "coeff": "-1"}]}
    ],
    "trivial_pullback": "H"
  },
  "flags": {"normalized": true, "trivial": false},
  "fibration": {"mixed_volumes": {"2": "1"}},
  "analysis": {
    "levels_zero": [0, 1],
    "fano_identity": {"k": 2, "lambda": "1", "lower_cuts_trivial": true}
  }
})json";

const char* kP1Point = R"json({
  "n": 0, "m": 1, "total_degree": 2,
  "classes": ["H", "E", "Klog"],
  "variables": [],
  "products": [
    {"exponents": {"H": 2}, "value": "0"},
    {"exponents": {"H": 1, "E": 1}, "value": "0"},
    {"exponents": {"E": 2}, "value": "-1"},
    {"exponents": {"Klog": 1, "H": 1}, "value": "0"},
    {"exponents": {"Klog": 1, "E": 1}, "value": "-1"}
  ],
  "exceptionals": [{"class": "E", "b": 1, "A": "1"}],
  "roles": {
    "polarization": [
      {"class": "H", "coeff": "1"},
      {"class": "E", "coeff": [{"exponents": {"eps": 1}, "coeff": "-1"}]}
    ],
    "trivial_pullback": "H",
    "klog": "Klog"
  },
  "flags": {"normalized": true, "trivial": false},
  "fibration": {
    "mixed_volumes": {"0": "1"},
    "canonical_products": [{"h": 0, "l": 0, "value": "-2"}]
  }
})json";

const char* kProductCurve = R"json({
  "n": 1, "m": 1, "total_degree": 3,
  "classes": ["h", "L", "E", "K"],
  "variables": [],
  "products": [
    {"exponents": {"L": 1, "E": 2}, "value": "-1"},
    {"exponents": {"L": 1, "K": 1, "E": 1}, "value": "-1"}
  ],
  "zero_default": [
    {"h": 2}, {"L": 2}, {"h": 1, "E": 1}, {"h": 1, "K": 1},
    {"K": 2}, {"E": 3}, {"E": 2, "K": 1}
  ],
  "exceptionals": [{"class": "E", "b": 1, "A": "1"}],
  "roles": {
    "polarization": [
      {"class": "h", "coeff": "1"},
      {"class": "L", "coeff": "1"},
      {"class": "E", "coeff": [{"exponents": {"eps": 1}, "coeff": "-1"}]}
    ],
    "trivial_pullback": [{"class": "h", "coeff": "1"}, {"class": "L", "coeff": "1"}],
    "base_pullback": "L",
    "klog": [{"class": "K", "coeff": "1"}, {"class": "L", "coeff": "-2"}]
  },
  "flags": {"normalized": true, "trivial": false},
  "fibration": {
    "mixed_volumes": {"0": "1", "1": "2"},
    "canonical_products": [{"h": 1, "l": 0, "value": "-4"}, {"h": 0, "l": 1, "value": "-2"}]
  }
})json";

const char* kTrivial = R"json({
  "n": 0, "m": 1, "total_degree": 2,
  "classes": ["H", "K"],
  "variables": [],
  "products": [
    {"exponents": {"H": 2}, "value": "0"},
    {"exponents": {"K": 1, "H": 1}, "value": "0"}
  ],
  "exceptionals": [],
  "roles": {"polarization": "H", "trivial_pullback": "H", "klog": "K"},
  "flags": {"normalized": true, "trivial": true},
  "fibration": {
    "mixed_volumes": {"0": "1"},
    "canonical_products": [{"h": 0, "l": 0, "value": "-2"}]
  }
})json";

const char* kDncCatalog = R"json({
  "catalog": [
    {
      "N": 3, "n": 2, "V": "1", "level": 2,
      "components": [
        {"codim": 3, "m": 1, "deg": "1", "center": "1", "A": "-1", "fiber_type": false, "codim_base": 2}
      ]
    },
    {
      "N": 3, "n": 2, "V": "1", "level": 2, "lambda": "1",
      "components": [
        {"codim": 3, "m": 1, "deg": "1", "center": "1", "A": "0", "fiber_type": false, "codim_base": 2}
      ]
    }
  ]
})json";

const char* kSameScalar = R"json({
  "scalar_components": [
    {"S": "3", "base_volume": "1", "fiber_volume": "1"},
    {"S": "1", "base_volume": "1", "fiber_volume": "1"}
  ]
})json";

}  // namespace

const std::vector<ExampleInfo>& bundled_examples() {
    static const std::vector<ExampleInfo> examples = {
        {"lcbase",
         "curve x lc-surface fibration, normal cone of curve x {lc point}: W_0 = W_1 = W_2 = 0, "
         "not f-stable",
         kLcBase},
        {"lcbase-symbolic",
         "same degeneration with E^4 kept symbolic: V(I - 3J) = -1/4 eps^4 E^4, independent of E^3.H",
         kLcBaseSymbolic},
        {"p1-point", "blow-up of a point of P1 x A1: M^NA = DF = eps - eps^2, J = -E, I = 2J", kP1Point},
        {"product-curve",
         "fiberwise point blow-up of a P1-bundle over a curve: W_0 = W_1 = 2(eps - eps^2)",
         kProductCurve},
        {"trivial", "trivial configuration: every functional and every W level vanishes", kTrivial},
        {"dnc-catalog",
         "two slope degenerations: a negative-discrepancy obstruction and a Fano fiber-type obstruction",
         kDncCatalog},
        {"same-scalar", "two components with unequal fiber scalar curvature: W_0 < 0 at order eps",
         kSameScalar},
    };
    return examples;
}

const ExampleInfo& find_example(const std::string& name) {
    for (const ExampleInfo& example : bundled_examples())
        if (example.name == name) return example;
    throw Error(ErrorKind::IndexOutOfRange, "no bundled example named '" + name + "'");
}

OJson run_example(const std::string& name) {
    const ExampleInfo& info = find_example(name);
    Json doc = Json::parse(info.json_text);
    OJson out;
    out["example"] = info.name;
    out["description"] = info.description;
    if (is_scalar_components(doc)) {
        out["kind"] = "scalar";
        out["report"] = run_scalar_components(load_scalar_components(doc));
        return out;
    }
    if (is_catalog(doc)) {
        out["kind"] = "catalog";
        out["report"] = run_catalog(load_catalog(doc, 4), std::nullopt, std::nullopt, false);
        return out;
    }
    out["kind"] = "datum";
    DatumFile file = load_datum(doc);
    out["functionals"] = run_functionals(file, true, false);
    out["wtable"] = run_wtable(file, SignHypotheses{}, false);
    return out;
}

std::string example_text(const OJson& report) {
    std::ostringstream os;
    os << "example: " << report["example"].get<std::string>() << "\n";
    os << report["description"].get<std::string>() << "\n\n";
    const std::string kind = report["kind"].get<std::string>();
    if (kind == "scalar") {
        os << scalar_text(report["report"]);
    } else if (kind == "catalog") {
        os << catalog_text(report["report"]);
    } else {
        const OJson& fr = report["functionals"];
        os << "volume: " << fr["volume"].get<std::string>() << "\n";
        auto line = [&](const char* label, const char* key) {
            if (fr.contains(key)) os << label << " = " << fr[key].get<std::string>() << "\n";
        };
        line("E^NA ", "e_na_str");
        line("I^NA ", "i_na_str");
        line("J^NA ", "j_na_str");
        line("H^NA ", "h_na_str");
        line("R^NA ", "r_na_str");
        line("M^NA ", "m_na_str");
        line("DF   ", "df_str");
        if (fr.contains("identities_checked"))
            for (const auto& check : fr["identities_checked"])
                os << (check["holds"].get<bool>() ? "[ok]   " : "[FAIL] ")
                   << check["name"].get<std::string>() << "\n";
        os << "\nW table:\n";
        const OJson& wt = report["wtable"];
        for (std::size_t i = 0; i < wt["w_str"].size(); ++i)
            os << "  W_" << i << " = " << wt["w_str"][i].get<std::string>() << "\n";
        os << "remainder: " << wt["remainder"]["str"].get<std::string>() << "\n";
        os << "verdict: " << wt["verdict"]["kind"].get<std::string>() << " -- "
           << wt["verdict"]["detail"].get<std::string>() << "\n";
        if (wt.contains("notes"))
            for (const auto& note : wt["notes"]) os << "note: " << note.get<std::string>() << "\n";
    }
    return os.str();
}

}  // namespace fibrk
