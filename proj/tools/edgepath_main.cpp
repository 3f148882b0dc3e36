#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "edgepath/certifier.hpp"

using namespace edgepath;

namespace {

struct Common {
  std::string format = "json";
  std::string output;
  unsigned threads = 1;
  std::size_t power_cap = kDefaultPowerCap;
  std::size_t tolerance_cap = kDefaultToleranceCap;
  std::size_t poly_arity = 2;
  std::size_t poly_cap = 20'000;

  CertifyOptions options() const {
    CertifyOptions o;
    o.power_cap = power_cap;
    o.tolerance_cap = tolerance_cap;
    o.poly_max_arity = poly_arity;
    o.poly_count_cap = poly_cap;
    o.threads = threads;
    return o;
  }
};

struct Inputs {
  std::string a;
  std::string b;
  std::string pp;
  std::string faces = "box";
  std::string mu = "shift";
};

/// Input errors map to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--output,-o", c.output, "write to this file instead of stdout");
  sub->add_option("--threads", c.threads, "worker threads")->envname("PCSP_EP_THREADS");
  sub->add_option("--power-cap", c.power_cap, "bound on direct-power domains");
  sub->add_option("--tolerance-cap", c.tolerance_cap, "bound on r! |R|^2 for box tolerances");
  sub->add_option("--poly-arity", c.poly_arity, "largest polymorphism arity enumerated");
  sub->add_option("--poly-cap", c.poly_cap, "polymorphism count cap above arity 1");
}

void text_lines(const json& j, const std::string& indent, std::ostream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = j.is_object() ? it.key() : "-";
    const json& v = *it;
    bool flat = !v.is_structured() ||
                (v.is_array() && std::none_of(v.begin(), v.end(), [](const json& x) { return x.is_structured(); }));
    if (flat) {
      out << indent << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    } else {
      out << indent << key << ":\n";
      text_lines(v, indent + "  ", out);
    }
  }
}

std::string render(const json& j, const Common& c) {
  if (c.format == "json") return j.dump(2) + "\n";
  std::ostringstream out;
  text_lines(j, "", out);
  return out.str();
}

void emit(const std::string& text, const Common& c) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw InputError("cannot write '" + c.output + "'");
  out << text;
}

RelationalStructure load(const std::string& path, const char* flag) {
  if (path.empty()) throw InputError(std::string("missing ") + flag);
  return load_structure(path);
}

/// Single-structure commands take --a or --b; faces files may be side-keyed.
struct Side {
  RelationalStructure s;
  char key;
};

Side one_side(const Inputs& in) {
  if (!in.a.empty() && !in.b.empty()) throw InputError("give exactly one of --a, --b");
  if (!in.a.empty()) return {load(in.a, "--a"), 'A'};
  return {load(in.b, "--b"), 'B'};
}

std::vector<VertexSet> side_faces(const std::string& file, char key) {
  json j = read_json_file(file);
  if (j.is_object()) j = j.at(std::string(1, key));
  return faces_from_json(j);
}

SimplicialComplex make_complex(const Relation& r, const std::string& faces, char key, const Common& c) {
  if (faces == "box") return build_box_complex(r, c.tolerance_cap);
  return build_complex(r, side_faces(faces, key));
}

Relation define(const std::string& pp, const RelationalStructure& s) {
  if (pp.empty()) throw InputError("missing --pp");
  PPFormula f = parse_pp_formula(pp);
  validate_pp_formula(f, s);
  return eval_pp_formula(f, s);
}

CertifyInput certify_input(const Inputs& in) {
  CertifyInput ci{load(in.a, "--a"), load(in.b, "--b"), in.pp, {}, {}};
  if (in.pp.empty()) throw InputError("missing --pp");
  if (in.faces != "box") ci.faces = FaceSpec::from_json(read_json_file(in.faces));
  if (in.mu != "shift") ci.mu = MuSpec::from_json(read_json_file(in.mu));
  return ci;
}

int cmd_parse(const std::string& file, const Common& c) {
  RelationalStructure s = load(file, "structure file");
  json j = structure_summary(s);
  if (c.format == "text") {
    emit(serialize_structure(s), c);
  } else {
    emit(render(j, c), c);
  }
  return 0;
}

int cmd_complex(const Inputs& in, const Common& c) {
  Side side = one_side(in);
  Relation r = define(in.pp, side.s);
  SimplicialComplex h = make_complex(r, in.faces, side.key, c);
  ComplexGraph g(h);
  const auto o = max_pairwise_face_overlap(h);
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  json j = {{"structure", side.s.name()},
            {"vertices", vertices_to_json(side.s, r)},
            {"faces", faces_to_json(h)},
            {"graph", {{"edges", edges}, {"connected", is_connected(g)}}},
            {"overlap", {{"max", o.max_overlap}, {"common", o.common}}}};
  if (o.faces) j["overlap"]["faces"] = {o.faces->first, o.faces->second};
  emit(render(j, c), c);
  return 0;
}

int cmd_group(const Inputs& in, const Common& c, bool presentation_only) {
  Side side = one_side(in);
  Relation r = define(in.pp, side.s);
  EdgePathContext ctx(make_complex(r, in.faces, side.key, c));
  Presentation p = ctx.presentation();
  if (presentation_only) {
    emit(presentation_text(p, ctx.alphabet()), c);
    return 0;
  }
  json j = {{"structure", side.s.name()},
            {"vertices", vertices_to_json(side.s, r)},
            {"presentation", presentation_to_json(p, ctx.alphabet())},
            {"free_basis", free_basis_to_json(ctx)}};
  emit(render(j, c), c);
  return 0;
}

json hypotheses_json(const HardnessCertificate& cert, std::initializer_list<const char*> names) {
  json out = json::array();
  for (const char* n : names) {
    const Hypothesis* h = cert.find(n);
    out.push_back({{"name", n}, {"status", to_string(h->status)}, {"detail", h->detail}, {"witness", h->witness}});
  }
  return out;
}

int cmd_mu_check(const Inputs& in, const Common& c) {
  HardnessCertificate cert = certify(certify_input(in), c.options());
  json hyps = hypotheses_json(cert, {"mu_action", "M1", "M2", "M3", "mu_connected_A", "mu_cycle_A", "mu_cycle_B"});
  bool pass = std::all_of(hyps.begin(), hyps.end(), [](const json& h) { return h["status"] == "PASS"; });
  emit(render({{"template", {{"A", cert.template_a}, {"B", cert.template_b}}}, {"checks", hyps}, {"pass", pass}}, c), c);
  return pass ? 0 : 1;
}

int cmd_poly(const Inputs& in, const Common& c, std::size_t arity, bool tables) {
  RelationalStructure a = load(in.a, "--a");
  RelationalStructure b = load(in.b, "--b");
  PolymorphismOptions po;
  po.threads = c.threads;
  po.max_count = c.poly_cap;
  po.table_cap = std::max(c.power_cap, c.poly_cap);
  auto fs = enumerate_polymorphisms(a, b, arity, po);
  json j = {{"A", a.name()}, {"B", b.name()}, {"arity", arity}, {"count", fs.size()}};
  if (tables) {
    json t = json::array();
    for (const auto& f : fs) t.push_back(polymorphism_to_json(f));
    j["polymorphisms"] = t;
  }
  if (!in.pp.empty()) {
    Relation ra = define(in.pp, a);
    Relation rb = define(in.pp, b);
    SimplicialComplex ha = make_complex(ra, in.faces, 'A', c);
    EdgePathContext cb(make_complex(rb, in.faces, 'B', c));
    CertifyInput ci = certify_input(in);
    MuAction mu = ci.mu.shift ? cyclic_shift_mu(ra) : mu_from_json(ci.mu.custom_a, ra);
    ComplexGraph ga(ha);
    SpanningTree ta(ga, 0);
    MuCycle cyc = build_mu_cycle(ga, ta, reduce_to_prime_order(mu), 0);
    XiContext xi(ha, cb, cyc.cycle);
    json images = json::array();
    for (const auto& f : fs) {
      XiImage img = xi.xi(f);
      auto s = analyze_xi_structure(img);
      json words = json::array();
      for (const auto& w : img.words) words.push_back(to_string(w));
      images.push_back({{"words", words},
                        {"essential", essential_coordinates(img)},
                        {"root", s.commuting ? json(to_string(s.root)) : json(nullptr)},
                        {"exponents", s.exponents}});
    }
    j["cycle"] = cyc.cycle.vertices;
    j["xi"] = images;
  }
  emit(render(j, c), c);
  return 0;
}

int cmd_certify(const Inputs& in, const Common& c, const std::string& replay_file) {
  CertifyInput ci = certify_input(in);
  if (!replay_file.empty()) {
    auto issues = replay(read_json_file(replay_file), ci, c.options());
    emit(render({{"replay", replay_file}, {"issues", issues}, {"reproduced", issues.empty()}}, c), c);
    return issues.empty() ? 0 : 1;
  }
  HardnessCertificate cert = certify(ci, c.options());
  emit(c.format == "json" ? cert.to_json().dump(2) + "\n" : cert.to_text(), c);
  return cert.np_hard ? 0 : 1;
}

int cmd_suite(const std::string& corpus, const Common& c) {
  SuiteReport r = run_application_suite(corpus, c.options());
  if (c.format == "json") {
    emit(r.to_json().dump(2) + "\n", c);
  } else {
    emit(r.to_text(), c);
  }
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-path group certificates for promise CSP templates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Common common;
  Inputs in;
  std::string file;
  std::string corpus = EDGEPATH_CORPUS_DIR;
  std::string replay_file;
  std::size_t arity = 1;
  bool tables = false;
  bool presentation_only = false;

  auto add_inputs = [&](CLI::App* sub, bool faces, bool mu) {
    sub->add_option("--a", in.a, "structure file for A");
    sub->add_option("--b", in.b, "structure file for B");
    sub->add_option("--pp", in.pp, "pp-formula defining R");
    if (faces) sub->add_option("--faces", in.faces, "box, or a JSON face file");
    if (mu) sub->add_option("--mu", in.mu, "shift, or a JSON action file");
  };

  auto* parse = app.add_subcommand("parse", "validate a structure file");
  parse->add_option("file", file, "structure file")->required();
  add_common(parse, common);

  auto* complex = app.add_subcommand("complex", "faces, graph and overlap statistics");
  add_inputs(complex, true, false);
  add_common(complex, common);

  auto* group = app.add_subcommand("group", "edge-path presentation and free basis");
  add_inputs(group, true, false);
  group->add_flag("--presentation", presentation_only, "print the plain-text presentation only");
  add_common(group, common);

  auto* mu = app.add_subcommand("mu-check", "(M1)-(M3), mu-connectivity and mu-cycles");
  add_inputs(mu, true, true);
  add_common(mu, common);

  auto* poly = app.add_subcommand("poly", "enumerate polymorphisms and their xi images");
  add_inputs(poly, true, true);
  poly->add_option("--arity,-n", arity, "polymorphism arity");
  poly->add_flag("--tables", tables, "include operation tables");
  add_common(poly, common);

  auto* cert = app.add_subcommand("certify", "hardness certificate");
  add_inputs(cert, true, true);
  cert->add_option("--replay", replay_file, "check a saved certificate against the inputs");
  add_common(cert, common);

  auto* suite = app.add_subcommand("suite", "certify the bundled application templates");
  suite->add_option("--corpus", corpus, "directory with the bundled structure files");
  add_common(suite, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*parse) return cmd_parse(file, common);
    if (*complex) return cmd_complex(in, common);
    if (*group) return cmd_group(in, common, presentation_only);
    if (*mu) return cmd_mu_check(in, common);
    if (*poly) return cmd_poly(in, common, arity, tables);
    if (*cert) return cmd_certify(in, common, replay_file);
    if (*suite) return cmd_suite(corpus, common);
  } catch (const ParseError& e) {
    std::cerr << "edgepath: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "edgepath: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "edgepath: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "edgepath: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
