// Command-line driver: species documents in, reports or documents out.
//
// Exit codes: 0 success, 1 computational failure, 2 usage or parse error.

#include <iostream>

#include "CLI11.hpp"
#include "spwp/golden.hpp"
#include "spwp/spwp.hpp"

using namespace spwp;

namespace {

enum class Format { Text, Json };

struct Failure {
  int code;
  std::string message;
};

void render_text(std::ostream& out, const json& j, int indent = 0) {
  const std::string pad(size_t(indent) * 2, ' ');
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [&](const json& v) {
    if (!v.is_array()) return false;
    for (const json& x : v)
      if (x.is_structured()) return false;
    return true;
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (!v.is_structured()) {
      out << pad << it.key() << ": " << scalar(v) << "\n";
    } else if (flat(v)) {
      out << pad << it.key() << ":";
      for (const json& x : v) out << " " << scalar(x);
      out << "\n";
    } else if (v.is_object()) {
      out << pad << it.key() << ":\n";
      render_text(out, v, indent + 1);
    } else {
      out << pad << it.key() << ":\n";
      for (const json& x : v) {
        if (x.is_object()) {
          out << pad << "  -\n";
          render_text(out, x, indent + 2);
        } else if (flat(x)) {
          out << pad << "  -";
          for (const json& y : x) out << " " << scalar(y);
          out << "\n";
        } else {
          out << pad << "  - " << x.dump() << "\n";
        }
      }
    }
  }
}

void report(const json& j, Format f) {
  if (f == Format::Json)
    std::cout << j.dump(2) << "\n";
  else
    render_text(std::cout, j);
}

SpeciesDocument load(const std::string& path) {
  try {
    return load_document(path);
  } catch (const ValidationError& e) {
    throw Failure{2, path + ": " + e.what()};
  } catch (const DegenerateTrace& e) {
    throw Failure{2, path + ": " + e.what()};
  }
}

int vertex_of(const Species& s, const std::string& id) {
  for (size_t v = 0; v < s.vertices().size(); ++v)
    if (s.vertex(int(v)).id == id) return int(v);
  throw Failure{2, "unknown vertex '" + id + "'"};
}

json cmd_check(const std::string& file) {
  SpeciesDocument d = load(file);
  const Species& s = d.species;
  json r;
  r["file"] = file;
  r["valid"] = true;
  r["vertices"] = s.vertices().size();
  r["arrows"] = s.arrows().size();
  r["potential_terms"] = d.potential.size();
  r["is_potential"] = is_potential(s, d.potential);
  r["is_reduced"] = is_reduced(d.potential);
  r["automorphism"] = d.automorphism.has_value();
  return r;
}

const char* block_name(ProductArrow::Block b) {
  switch (b) {
    case ProductArrow::Block::VertexArrow: return "vertex-arrow";
    case ProductArrow::Block::ArrowVertex: return "arrow-vertex";
    case ProductArrow::Block::DualDual: return "dual-dual";
  }
  return "";
}

json cmd_product(const std::string& f1, const std::string& f2) {
  ProductSpecies p = species_product(load(f1).species, load(f2).species);
  json r;
  r["vertices"] = json::array();
  for (const ProductVertex& v : p.vertices)
    r["vertices"].push_back({{"id", v.id}, {"fields", v.f1.field->name() + " (x) " + v.f2.field->name()}});
  r["arrows"] = json::array();
  for (const ProductArrow& a : p.arrows)
    r["arrows"].push_back({{"id", a.id},
                           {"block", block_name(a.block)},
                           {"source", p.vertices[a.source].id},
                           {"target", p.vertices[a.target].id},
                           {"dim", a.dim}});
  return r;
}

std::string cmd_product_basic(const std::string& f1, const std::string& f2) {
  BasicProduct bp = basic_version(species_product(load(f1).species, load(f2).species));
  return emit_document(bp.species, product_potential(bp));
}

// The document's own automorphism when it has one; otherwise a Nakayama
// automorphism found from the Jacobian algebra.
AlgebraMorphism orbit_automorphism(const SpeciesDocument& d, int max_degree) {
  if (d.automorphism) return *d.automorphism;
  auto a = compute_jacobian(d.species, d.potential, max_degree);
  NakayamaSearch n = find_nakayama_automorphism(*a);
  if (!n.gamma) throw NotAMorphism("no Nakayama automorphism permuting the arrows was found");
  return *n.gamma;
}

std::string cmd_mutate(const std::string& file, const std::string& vertex, const std::string& orbit, int max_degree) {
  SpeciesDocument d = load(file);
  const Species& s = d.species;
  if (!vertex.empty()) {
    MutationResult r = mutate(s, d.potential, vertex_of(s, vertex));
    return emit_document(r.species, r.potential);
  }
  const int k = vertex_of(s, orbit);
  AlgebraMorphism g = orbit_automorphism(d, max_degree);
  std::vector<int> members{k};
  for (int v = g.vertex_map.at(k); v != k; v = g.vertex_map.at(v)) members.push_back(v);
  OrbitMutation m = mutate_orbit(s, d.potential, g, members);
  return emit_document(m.result.species, m.result.potential, m.gamma);
}

json cmd_jacobian(const std::string& file, int max_degree) {
  SpeciesDocument d = load(file);
  const Species& s = d.species;
  auto a = compute_jacobian(s, d.potential, max_degree);
  json r;
  r["dimension"] = a->dim();
  r["stabilization_degree"] = a->stabilization_degree();
  r["truncation"] = a->truncation();
  auto blocks = a->block_dims();
  r["projectives"] = json::array();
  for (size_t i = 0; i < s.vertices().size(); ++i) {
    int total = 0;
    json by_target = json::object();
    for (size_t j = 0; j < s.vertices().size(); ++j) {
      total += blocks[j][i];
      if (blocks[j][i]) by_target[s.vertex(int(j)).id] = blocks[j][i];
    }
    r["projectives"].push_back({{"vertex", s.vertex(int(i)).id}, {"dim", total}, {"blocks", by_target}});
  }
  return r;
}

json cmd_selfinjective(const std::string& file, int max_degree) {
  SpeciesDocument d = load(file);
  auto a = compute_jacobian(d.species, d.potential, max_degree);
  json r;
  r["dimension"] = a->dim();
  r["left"] = is_self_injective(*a, Side::Left);
  r["right"] = is_self_injective(*a, Side::Right);
  r["self_injective"] = r["left"].get<bool>() && r["right"].get<bool>();
  return r;
}

json cmd_nakayama(const std::string& file, int max_degree, int& code) {
  SpeciesDocument d = load(file);
  const Species& s = d.species;
  auto a = compute_jacobian(s, d.potential, max_degree);
  json r;
  std::vector<int> sigma = nakayama_permutation(*a);
  r["sigma"] = json::object();
  for (size_t v = 0; v < sigma.size(); ++v) r["sigma"][s.vertex(int(v)).id] = s.vertex(sigma[v]).id;
  r["cycles"] = golden::cycle_notation(sigma, s);
  bool verified = false;
  if (d.automorphism) {
    r["automorphism"] = "given";
    verified = verify_nakayama_automorphism(*a, *d.automorphism);
  } else {
    NakayamaSearch n = find_nakayama_automorphism(*a);
    r["automorphism"] = n.candidates.empty() ? "none" : "searched";
    json c = json::array();
    for (size_t k = 0; k < n.candidates.size(); ++k)
      c.push_back({{"galois_index", k}, {"verified", bool(n.verified[k])}});
    r["candidates"] = c;
    verified = n.gamma.has_value();
  }
  r["verified"] = verified;
  code = verified ? 0 : 1;
  return r;
}

json cmd_verify_paper(const std::string& fixtures, int& code) {
  json r;
  r["checks"] = json::array();
  bool all = true;
  for (const golden::Check& c : golden::run_all(fixtures)) {
    all = all && c.pass;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", c.seconds);
    r["checks"].push_back({{"criterion", c.criterion},
                           {"name", c.name},
                           {"result", c.pass ? "PASS" : "FAIL"},
                           {"seconds", secs},
                           {"detail", c.detail}});
  }
  r["all_passed"] = all;
  code = all ? 0 : 1;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Species with potential: products, mutation, Jacobian algebras"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));

  std::string file, file2, vertex, orbit, fixtures = golden::default_fixture_dir();
  int max_degree = 12;
  bool basic = false;

  auto* check = app.add_subcommand("check", "Validate a document, report is_potential and is_reduced");
  check->add_option("FILE", file)->required();

  auto* product = app.add_subcommand("product", "Tensor product of two species");
  product->add_option("F1", file)->required();
  product->add_option("F2", file2)->required();
  product->add_flag("--basic", basic, "Emit the basic version with its potential as a document");

  auto* mut = app.add_subcommand("mutate", "Mutate at a vertex or along a Nakayama orbit; emits a document");
  mut->add_option("FILE", file)->required();
  auto* ov = mut->add_option("--vertex", vertex, "Vertex id");
  auto* oo = mut->add_option("--orbit", orbit, "A vertex of the orbit");
  ov->excludes(oo);
  mut->add_option("--max-degree", max_degree, "Truncation bound when the orbit needs the Jacobian algebra");

  auto* jac = app.add_subcommand("jacobian", "Dimension and block structure of the Jacobian algebra");
  jac->add_option("FILE", file)->required();
  jac->add_option("--max-degree", max_degree, "Largest word length tried");

  auto* si = app.add_subcommand("selfinjective", "Exactness of the four-term complexes");
  si->add_option("FILE", file)->required();
  si->add_option("--max-degree", max_degree, "Largest word length tried");

  auto* nak = app.add_subcommand("nakayama", "Nakayama permutation and automorphism");
  nak->add_option("FILE", file)->required();
  nak->add_option("--max-degree", max_degree, "Largest word length tried");

  auto* vp = app.add_subcommand("verify-paper", "Run the worked-example checks");
  vp->add_option("--fixtures", fixtures, "Fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (mut->parsed() && vertex.empty() == orbit.empty()) {
    std::cerr << "mutate: exactly one of --vertex and --orbit is required\n";
    return 2;
  }
  if (max_degree < 2) {
    std::cerr << "--max-degree must be at least 2\n";
    return 2;
  }

  const Format f = format == "json" ? Format::Json : Format::Text;
  int code = 0;
  try {
    if (check->parsed()) report(cmd_check(file), f);
    else if (product->parsed() && basic) std::cout << cmd_product_basic(file, file2);
    else if (product->parsed()) report(cmd_product(file, file2), f);
    else if (mut->parsed()) std::cout << cmd_mutate(file, vertex, orbit, max_degree);
    else if (jac->parsed()) report(cmd_jacobian(file, max_degree), f);
    else if (si->parsed()) report(cmd_selfinjective(file, max_degree), f);
    else if (nak->parsed()) report(cmd_nakayama(file, max_degree, code), f);
    else if (vp->parsed()) report(cmd_verify_paper(fixtures, code), f);
  } catch (const Failure& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}
