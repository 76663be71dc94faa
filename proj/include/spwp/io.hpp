#pragma once

// Species documents: JSON text with every scalar written as an exact "p/q"
// string.
//
//   {
//     "format": "spwp-species/1",
//     "base_field": "Q",
//     "fields":   [{"name": "C", "min_poly": ["1", "0", "1"]}],
//     "vertices": [{"id": "1", "field": "C", "trace_scale": "1/2"}],
//     "arrows":   [{"id": "a", "source": "1", "target": "2", "carrier": "C",
//                   "left_twist": 0, "right_twist": 0},
//                  {"id": "b", "source": "2", "target": "1",
//                   "bimodule": {"left_gen": [[...]], "right_gen": [[...]],
//                                "right_basis": [[...]], "left_basis": [[...]]}}],
//     "potential": [{"coefficient": ["1", "0"],
//                    "word": [{"arrow": "b", "element": ["1", "0"]}, ...]}],
//     "automorphism": {"vertices": ["2", "1"], "field_maps": [0, 0],
//                      "arrows": [{"to": "b", "matrix": [[...]]}, ...]}
//   }
//
// A word lists its letters leftmost first. Each element is given in
// \underline{α}-coordinates: one block of source-field coordinates per
// element of the right basis. The coefficient multiplies the word on the
// right, so it lives in the field of the word's source vertex.

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "spwp/jacobian.hpp"

namespace spwp {

using json = nlohmann::ordered_json;

struct SpeciesDocument {
  Species species;
  TensorElement potential;
  std::optional<AlgebraMorphism> automorphism;
};

namespace detail {

struct Reader {
  static const json& at(const json& node, const std::string& path, const std::string& key) {
    if (!node.is_object()) throw ParseError(path, "expected an object");
    auto it = node.find(key);
    if (it == node.end()) throw ParseError(path, "missing key '" + key + "'");
    return *it;
  }

  static std::string str(const json& node, const std::string& path) {
    if (!node.is_string()) throw ParseError(path, "expected a string");
    return node.get<std::string>();
  }

  static int integer(const json& node, const std::string& path) {
    if (!node.is_number_integer()) throw ParseError(path, "expected an integer");
    return node.get<int>();
  }

  static Q scalar(const json& node, const std::string& path) {
    if (node.is_number_integer()) return Q(node.get<long>());
    if (!node.is_string()) throw ParseError(path, "expected a rational written as \"p/q\"");
    try {
      return parse_rational(node.get<std::string>());
    } catch (const std::exception&) {
      throw ParseError(path, "'" + node.get<std::string>() + "' is not a rational number");
    }
  }

  static Vec vec(const json& node, const std::string& path) {
    if (!node.is_array()) throw ParseError(path, "expected a list of rationals");
    Vec v;
    for (size_t i = 0; i < node.size(); ++i) v.push_back(scalar(node[i], path + "/" + std::to_string(i)));
    return v;
  }

  static Mat mat(const json& node, const std::string& path, int n) {
    if (!node.is_array() || int(node.size()) != n) throw ParseError(path, "expected " + std::to_string(n) + " rows");
    std::vector<Vec> rows;
    for (int i = 0; i < n; ++i) {
      rows.push_back(vec(node[i], path + "/" + std::to_string(i)));
      if (int(rows.back().size()) != n) throw ParseError(path + "/" + std::to_string(i), "row has the wrong length");
    }
    return Mat::from_rows(rows, n);
  }

  static const json& list(const json& node, const std::string& path) {
    if (!node.is_array()) throw ParseError(path, "expected a list");
    return node;
  }
};

inline json write_vec(const Vec& v) {
  json a = json::array();
  for (const Q& q : v) a.push_back(to_string(q));
  return a;
}

inline json write_mat(const Mat& m) {
  json a = json::array();
  for (int r = 0; r < m.rows(); ++r) a.push_back(write_vec(m.row(r)));
  return a;
}

inline json write_vecs(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const Vec& v : vs) a.push_back(write_vec(v));
  return a;
}

inline int line_of(const std::string& text, size_t byte) {
  return 1 + int(std::count(text.begin(), text.begin() + std::min(byte, text.size()), '\n'));
}

}  // namespace detail

inline SpeciesDocument document_from_json(const json& root) {
  using detail::Reader;
  if (!root.is_object()) throw ParseError("/", "a species document is a JSON object");
  if (root.contains("base_field") && Reader::str(root["base_field"], "/base_field") != "Q")
    throw ParseError("/base_field", "only the base field Q is supported");

  std::map<std::string, FieldPtr> fields{{"Q", NumberField::rationals()}};
  if (root.contains("fields")) {
    const json& fs = Reader::list(root["fields"], "/fields");
    for (size_t i = 0; i < fs.size(); ++i) {
      const std::string p = "/fields/" + std::to_string(i);
      std::string name = Reader::str(Reader::at(fs[i], p, "name"), p + "/name");
      Vec poly = Reader::vec(Reader::at(fs[i], p, "min_poly"), p + "/min_poly");
      if (fields.count(name)) throw ParseError(p + "/name", "field '" + name + "' is defined twice");
      try {
        fields[name] = NumberField::make(name, poly);
      } catch (const Error& e) {
        throw ParseError(p + "/min_poly", e.what());
      }
    }
  }
  auto field_named = [&](const std::string& name, const std::string& p) {
    auto it = fields.find(name);
    if (it == fields.end()) throw ParseError(p, "unknown field '" + name + "'");
    return it->second;
  };

  std::vector<VertexField> vertices;
  std::map<std::string, int> vix;
  const json& vs = Reader::list(Reader::at(root, "/", "vertices"), "/vertices");
  for (size_t i = 0; i < vs.size(); ++i) {
    const std::string p = "/vertices/" + std::to_string(i);
    VertexField v;
    v.id = Reader::str(Reader::at(vs[i], p, "id"), p + "/id");
    v.field = vs[i].contains("field") ? field_named(Reader::str(vs[i]["field"], p + "/field"), p + "/field")
                                      : NumberField::rationals();
    v.trace_scale = vs[i].contains("trace_scale") ? Reader::scalar(vs[i]["trace_scale"], p + "/trace_scale") : Q(1);
    if (!vix.emplace(v.id, int(vertices.size())).second) throw ParseError(p + "/id", "duplicate vertex id '" + v.id + "'");
    vertices.push_back(std::move(v));
  }
  auto vertex_named = [&](const json& node, const std::string& p) {
    std::string id = Reader::str(node, p);
    auto it = vix.find(id);
    if (it == vix.end()) throw ParseError(p, "unknown vertex '" + id + "'");
    return it->second;
  };

  std::vector<Arrow> arrows;
  if (root.contains("arrows")) {
    const json& as = Reader::list(root["arrows"], "/arrows");
    for (size_t i = 0; i < as.size(); ++i) {
      const std::string p = "/arrows/" + std::to_string(i);
      const json& a = as[i];
      Arrow x;
      x.id = Reader::str(Reader::at(a, p, "id"), p + "/id");
      x.source = vertex_named(Reader::at(a, p, "source"), p + "/source");
      x.target = vertex_named(Reader::at(a, p, "target"), p + "/target");
      const FieldPtr &fs = vertices[x.source].field, &ft = vertices[x.target].field;
      if (a.contains("carrier") == a.contains("bimodule"))
        throw ParseError(p, "give exactly one of 'carrier' and 'bimodule'");
      if (a.contains("carrier")) {
        CarrierInfo info{Reader::str(a["carrier"], p + "/carrier"), 0, 0};
        if (a.contains("left_twist")) info.left_twist = Reader::integer(a["left_twist"], p + "/left_twist");
        if (a.contains("right_twist")) info.right_twist = Reader::integer(a["right_twist"], p + "/right_twist");
        FieldPtr carrier = field_named(info.field, p + "/carrier");
        try {
          x.M = build_from_carrier(fs, ft, carrier, info.left_twist, info.right_twist);
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          throw ValidationError("arrow '" + x.id + "': " + e.what());
        }
        x.carrier = info;
      } else {
        const json& b = a["bimodule"];
        const std::string q = p + "/bimodule";
        const json& lg = Reader::at(b, q, "left_gen");
        const int n = int(Reader::list(lg, q + "/left_gen").size());
        Mat l = Reader::mat(lg, q + "/left_gen", n);
        Mat r = Reader::mat(Reader::at(b, q, "right_gen"), q + "/right_gen", n);
        std::vector<Vec> under, over;
        for (auto [key, out] : {std::pair{"right_basis", &under}, std::pair{"left_basis", &over}})
          if (b.contains(key)) {
            const json& bs = Reader::list(b[key], q + "/" + key);
            for (size_t k = 0; k < bs.size(); ++k) out->push_back(Reader::vec(bs[k], q + "/" + key + "/" + std::to_string(k)));
          }
        try {
          x.M = Bimodule(ft, fs, l, r, under, over);
        } catch (const Error& e) {
          throw ValidationError("arrow '" + x.id + "': " + e.what());
        }
      }
      arrows.push_back(std::move(x));
    }
  }

  SpeciesDocument doc{Species(std::move(vertices), std::move(arrows)), {}, {}};
  const Species& s = doc.species;

  if (root.contains("potential")) {
    const json& ts = Reader::list(root["potential"], "/potential");
    for (size_t i = 0; i < ts.size(); ++i) {
      const std::string p = "/potential/" + std::to_string(i);
      const json& word = Reader::list(Reader::at(ts[i], p, "word"), p + "/word");
      if (word.empty()) throw ParseError(p + "/word", "a potential term needs at least one letter");
      std::vector<TensorElement> factors;
      int prev_source = -1;
      for (size_t k = 0; k < word.size(); ++k) {
        const std::string q = p + "/word/" + std::to_string(k);
        std::string id = Reader::str(Reader::at(word[k], q, "arrow"), q + "/arrow");
        int a;
        try {
          a = s.arrow_index(id);
        } catch (const Error&) {
          throw ParseError(q + "/arrow", "unknown arrow '" + id + "'");
        }
        const Arrow& ar = s.arrow(a);
        if (prev_source >= 0 && ar.target != prev_source)
          throw ParseError(q, "arrow '" + id + "' does not compose with the letter to its left");
        prev_source = ar.source;
        Vec e = Reader::vec(Reader::at(word[k], q, "element"), q + "/element");
        const int deg = s.field(ar.source)->degree();
        if (int(e.size()) != s.letters(a) * deg)
          throw ParseError(q + "/element", "expected " + std::to_string(s.letters(a) * deg) + " coordinates");
        std::vector<Vec> blocks;
        for (int b = 0; b < s.letters(a); ++b) blocks.emplace_back(e.begin() + b * deg, e.begin() + (b + 1) * deg);
        factors.push_back(arrow_element(s, a, ar.M.from_right_coords(blocks)));
      }
      Vec c = Reader::vec(Reader::at(ts[i], p, "coefficient"), p + "/coefficient");
      if (int(c.size()) != s.field(prev_source)->degree())
        throw ParseError(p + "/coefficient", "expected " + std::to_string(s.field(prev_source)->degree()) + " coordinates");
      factors.push_back(vertex_scalar(s, prev_source, FieldElement(s.field(prev_source), c)));
      doc.potential += multiply(s, factors);
    }
  }

  if (root.contains("automorphism")) {
    const json& g = root["automorphism"];
    const std::string p = "/automorphism";
    AlgebraMorphism m;
    const json& vm = Reader::list(Reader::at(g, p, "vertices"), p + "/vertices");
    if (vm.size() != s.vertices().size()) throw ParseError(p + "/vertices", "one image per vertex is required");
    for (size_t v = 0; v < vm.size(); ++v) m.vertex_map.push_back(vertex_named(vm[v], p + "/vertices/" + std::to_string(v)));
    const json& fm = Reader::list(Reader::at(g, p, "field_maps"), p + "/field_maps");
    if (fm.size() != s.vertices().size()) throw ParseError(p + "/field_maps", "one Galois index per vertex is required");
    for (size_t v = 0; v < fm.size(); ++v) {
      const std::string q = p + "/field_maps/" + std::to_string(v);
      auto gal = galois_automorphisms(s.field(int(v)));
      int k = Reader::integer(fm[v], q);
      if (k < 0 || k >= int(gal.size())) throw ParseError(q, "Galois index out of range");
      m.field_maps.push_back(gal[k]);
    }
    const json& am = Reader::list(Reader::at(g, p, "arrows"), p + "/arrows");
    if (am.size() != s.arrows().size()) throw ParseError(p + "/arrows", "one image per arrow is required");
    for (size_t a = 0; a < am.size(); ++a) {
      const std::string q = p + "/arrows/" + std::to_string(a);
      std::string id = Reader::str(Reader::at(am[a], q, "to"), q + "/to");
      int b;
      try {
        b = s.arrow_index(id);
      } catch (const Error&) {
        throw ParseError(q + "/to", "unknown arrow '" + id + "'");
      }
      m.arrow_map.push_back(b);
      m.arrow_matrices.push_back(Reader::mat(Reader::at(am[a], q, "matrix"), q + "/matrix", s.arrow(b).M.dim()));
    }
    doc.automorphism = std::move(m);
  }
  return doc;
}

inline SpeciesDocument parse_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(detail::line_of(text, e.byte)), "malformed JSON");
  }
  return document_from_json(root);
}

inline SpeciesDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_document(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.where(), e.message());
  }
}

inline json emit_json(const Species& s, const TensorElement& w, const std::optional<AlgebraMorphism>& g = {}) {
  json root;
  root["format"] = "spwp-species/1";
  root["base_field"] = "Q";

  std::vector<FieldPtr> fields;
  auto note = [&](const FieldPtr& f) {
    if (f->is_base()) return;
    for (const FieldPtr& h : fields)
      if (same_field(h, f)) {
        if (h->name() != f->name()) throw ValidationError("field '" + f->name() + "' duplicates '" + h->name() + "'");
        return;
      }
    for (const FieldPtr& h : fields)
      if (h->name() == f->name()) throw ValidationError("two different fields are named '" + f->name() + "'");
    fields.push_back(f);
  };
  for (const auto& v : s.vertices()) note(v.field);
  json fs = json::array();
  for (const FieldPtr& f : fields) fs.push_back({{"name", f->name()}, {"min_poly", detail::write_vec(f->min_poly())}});
  root["fields"] = fs;

  json vs = json::array();
  for (const auto& v : s.vertices())
    vs.push_back({{"id", v.id}, {"field", v.field->name()}, {"trace_scale", to_string(v.trace_scale)}});
  root["vertices"] = vs;

  json as = json::array();
  for (const auto& a : s.arrows()) {
    json x{{"id", a.id}, {"source", s.vertex(a.source).id}, {"target", s.vertex(a.target).id}};
    bool by_carrier = false;
    if (a.carrier) {
      FieldPtr carrier;
      for (const FieldPtr& f : fields)
        if (f->name() == a.carrier->field) carrier = f;
      if (!carrier && a.carrier->field == "Q") carrier = NumberField::rationals();
      if (carrier) {
        try {
          by_carrier = build_from_carrier(s.field(a.source), s.field(a.target), carrier, a.carrier->left_twist,
                                          a.carrier->right_twist) == a.M;
        } catch (const Error&) {
          by_carrier = false;
        }
      }
    }
    if (by_carrier) {
      x["carrier"] = a.carrier->field;
      x["left_twist"] = a.carrier->left_twist;
      x["right_twist"] = a.carrier->right_twist;
    } else {
      x["bimodule"] = {{"left_gen", detail::write_mat(a.M.left_gen())},
                       {"right_gen", detail::write_mat(a.M.right_gen())},
                       {"right_basis", detail::write_vecs(a.M.right_basis())},
                       {"left_basis", detail::write_vecs(a.M.left_basis())}};
    }
    as.push_back(std::move(x));
  }
  root["arrows"] = as;

  json ts = json::array();
  for (const auto& [word, c] : w.terms()) {
    if (word.letters.empty()) throw ValidationError("a potential has no degree-zero terms");
    json letters = json::array();
    for (const Letter& l : word.letters) {
      const int deg = s.field(s.arrow(l.arrow).source)->degree();
      Vec e(size_t(s.letters(l.arrow)) * deg);
      e[size_t(l.index) * deg] = 1;
      letters.push_back({{"arrow", s.arrow(l.arrow).id}, {"element", detail::write_vec(e)}});
    }
    ts.push_back({{"coefficient", detail::write_vec(c.coords())}, {"word", letters}});
  }
  root["potential"] = ts;

  if (g) {
    json vm = json::array(), fm = json::array(), am = json::array();
    for (size_t v = 0; v < g->vertex_map.size(); ++v) {
      vm.push_back(s.vertex(g->vertex_map[v]).id);
      auto gal = galois_automorphisms(s.field(int(v)));
      int k = -1;
      for (size_t j = 0; j < gal.size(); ++j)
        if (gal[j].image_of_generator.coords() == g->field_maps[v].image_of_generator.coords()) k = int(j);
      fm.push_back(k);
    }
    for (size_t a = 0; a < g->arrow_map.size(); ++a)
      am.push_back({{"to", s.arrow(g->arrow_map[a]).id}, {"matrix", detail::write_mat(g->arrow_matrices[a])}});
    root["automorphism"] = {{"vertices", vm}, {"field_maps", fm}, {"arrows", am}};
  }
  return root;
}

inline std::string emit_document(const Species& s, const TensorElement& w, const std::optional<AlgebraMorphism>& g = {}) {
  return emit_json(s, w, g).dump(2) + "\n";
}

}  // namespace spwp
