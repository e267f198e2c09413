#include "obk/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "obk/certificate.hpp"
#include "obk/homology.hpp"
#include "obk/page.hpp"
#include "obk/report.hpp"
#include "obk/rewrite.hpp"

namespace obk::cli {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

struct GlobalOpts {
  std::uint64_t seed = 7;
  int samples = 500;
  double tol = 1e-6;
  double h = 1e-4;
  bool json_output = false;
  bool seed_set = false, samples_set = false, tol_set = false, h_set = false;
  std::optional<std::string> config_path;

  // A config file supplies the base; explicit flags override it.
  NumericConfig config() const {
    NumericConfig cfg;
    if (config_path) cfg = config_from_json(slurp(*config_path));
    if (seed_set || !config_path) cfg.seed = seed;
    if (samples_set || !config_path) cfg.samples = samples;
    if (tol_set || !config_path) cfg.tol_pullback = tol;
    if (h_set || !config_path) cfg.h = h;
    return cfg;
  }
};

int cmd_classify(int genus, const std::string& word_text,
                 const std::optional<std::string>& system_path, const GlobalOpts& opts,
                 std::ostream& out) {
  CurveSystem sys = system_path ? curve_system_from_json(slurp(*system_path))
                                : extended_humphries_system(genus);
  if (sys.genus() != genus)
    throw ParseError("curve system has genus " + std::to_string(sys.genus()) +
                     " but --genus is " + std::to_string(genus));
  TwistWord word = parse_word(word_text);
  for (const auto& name : mentioned_names(word))
    if (!sys.has_curve(name)) throw ParseError("word mentions unknown curve: " + name);

  bool type1 = uses_only(word, blue_curves(genus));
  bool torelli = is_torelli(sys, word);
  HomologySummary h1 = open_book_homology(sys, word);

  std::string caveat;
  if (!type1)
    caveat =
        "monodromy twists along curves outside the spine generators b1, a1, c1, ..., a_g; "
        "no certificate is synthesized for it, and this is not a claim of non-embeddability";
  std::string note;
  if (torelli && !word.empty())
    note = "monodromy acts trivially on homology; the computed H1 matches the identity "
           "monodromy (free rank 2g)";

  if (opts.json_output) {
    json j;
    j["word"] = format_word(normalize(sys, word));
    j["type1"] = type1;
    j["torelli"] = torelli;
    j["h1"]["free_rank"] = h1.free_rank;
    j["h1"]["torsion"] = json::array();
    for (const auto& t : h1.torsion) j["h1"]["torsion"].push_back(t.get_str());
    if (!caveat.empty()) j["caveat"] = caveat;
    if (!note.empty()) j["note"] = note;
    out << j.dump(2) << "\n";
  } else {
    out << "word:    " << format_word(normalize(sys, word)) << "\n";
    out << "type1:   " << (type1 ? "yes" : "no") << "\n";
    out << "torelli: " << (torelli ? "yes" : "no") << "\n";
    out << "H1:      free rank " << h1.free_rank << ", torsion [";
    for (std::size_t i = 0; i < h1.torsion.size(); ++i)
      out << (i ? ", " : "") << h1.torsion[i].get_str();
    out << "]\n";
    if (!caveat.empty()) out << "caveat:  " << caveat << "\n";
    if (!note.empty()) out << "note:    " << note << "\n";
  }
  return 0;
}

void print_certificate_summary(const EmbeddingCertificate& cert, std::ostream& out) {
  out << "source: " << cert.source.page.nodes.size() << " node(s), dim " << cert.source.page.dim
      << ", monodromy '" << format_word(cert.source.monodromy) << "'\n";
  out << "target: " << cert.target.page.nodes.size() << " node(s), dim " << cert.target.page.dim
      << ", monodromy '" << format_word(cert.target.monodromy) << "'\n";
  out << "schedule:\n";
  for (const auto& block : cert.schedule) {
    out << "  [" << block.t0 << ", " << block.t1 << "]";
    for (const auto& step : block.steps) {
      if (const auto* t = std::get_if<AmbientTwist>(&step))
        out << "  twist(" << t->node << "^" << t->power << ", p0=" << t->support << ")";
      else if (std::holds_alternative<IsotopeAway>(step))
        out << "  push-away";
      else if (std::holds_alternative<IsotopeBack>(step))
        out << "  pull-back";
      else if (std::holds_alternative<ExtendIsotopy>(step))
        out << "  extend";
      else
        out << "  glue";
    }
    out << "\n";
  }
}

int cmd_embed(const EmbeddingCertificate& cert, const std::optional<std::string>& emit,
              std::ostream& out) {
  std::string doc = certificate_to_json(cert);
  if (emit)
    spit(*emit, doc);
  else
    out << doc << "\n";
  print_certificate_summary(cert, out);
  return 0;
}

int cmd_verify(const std::string& cert_path, const std::optional<std::string>& report_path,
               const GlobalOpts& opts, std::ostream& out) {
  EmbeddingCertificate cert = certificate_from_json(slurp(cert_path));
  NumericConfig cfg;
  try {
    cfg = opts.config();
    cfg.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {  // bad config is a usage error, not a failed check
    throw ParseError(e.what());
  }
  Report rep = check_certificate(cert, cfg);
  std::string path = report_path ? *report_path : cert_path + ".report.json";
  spit(path, report_to_json(rep));

  if (opts.json_output) {
    out << report_to_json(rep) << "\n";
  } else {
    for (const auto& o : rep.obligations) {
      const char* status = o.status == Obligation::Status::Pass
                               ? "pass"
                               : (o.status == Obligation::Status::Fail ? "FAIL" : "symbolic");
      out << status << "  " << o.name;
      if (!o.node.empty()) out << " [" << o.node << "]";
      if (o.samples > 0) out << "  measured " << o.measured << " vs " << o.threshold;
      if (!o.detail.empty()) out << "  (" << o.detail << ")";
      out << "\n";
    }
    out << (rep.pass ? "all obligations pass" : "obligations FAILED") << "\n";
    out << "report written to " << path << "\n";
  }
  return rep.pass ? 0 : 1;
}

int run_guarded(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"open book embedding toolkit"};
  app.require_subcommand(1);

  GlobalOpts opts;
  auto* seed_opt = app.add_option("--seed", opts.seed, "RNG seed for all numeric checks");
  auto* samples_opt = app.add_option("--samples", opts.samples, "sample count for numeric checks");
  auto* tol_opt = app.add_option("--tol", opts.tol, "pullback tolerance");
  auto* h_opt = app.add_option("--fd-step", opts.h, "finite-difference step");
  app.add_option("--config", opts.config_path, "numeric config JSON file");
  app.add_flag("--json", opts.json_output, "emit JSON instead of text");

  // classify
  auto* classify = app.add_subcommand("classify", "classify a surface monodromy word");
  int genus = 2;
  std::string word_text;
  std::optional<std::string> system_path;
  classify->add_option("--genus", genus, "surface genus")->required();
  classify->add_option("--word", word_text, "twist word, e.g. \"b1 a1^2 c1^-1\"")->required();
  classify->add_option("--system", system_path, "curve system JSON (default: built-in)");

  // embed
  auto* embed = app.add_subcommand("embed", "synthesize an embedding certificate");
  embed->require_subcommand(1);
  std::optional<std::string> emit;
  embed->add_option("--emit", emit, "write the certificate JSON here");

  auto* thm1 = embed->add_subcommand("thm1", "single sphere node, twist k into twist l");
  int t_n = 1;
  long long t_k = 1, t_l = 1;
  thm1->add_option("--n", t_n, "sphere dimension")->required();
  thm1->add_option("--k", t_k, "source twist power")->required();
  thm1->add_option("--l", t_l, "target twist power")->required();

  auto* type1 = embed->add_subcommand("type1", "arbitrary type-1 open book from JSON");
  std::string ob_path;
  type1->add_option("--in", ob_path, "open book JSON file")->required();

  auto* surface = embed->add_subcommand("surface", "surface monodromy over the spine curves");
  int s_genus = 1;
  std::string s_word;
  surface->add_option("--genus", s_genus, "surface genus")->required();
  surface->add_option("--word", s_word, "twist word over b1, a1, c1, ..., a_g")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "check an embedding certificate");
  std::string cert_path;
  std::optional<std::string> report_path;
  verify->add_option("certificate", cert_path, "certificate JSON file")->required();
  verify->add_option("--report", report_path, "report JSON path (default: <cert>.report.json)");

  // catalog
  auto* cat = app.add_subcommand("catalog", "print a named open book");
  std::string cat_name;
  int c_n = 1, c_m = 2;
  long long c_k = 1;
  cat->add_option("name", cat_name, "xi-n | rp3 | ustilovsky | std-sphere")->required();
  cat->add_option("--n", c_n, "copies (xi-n) or sphere dimension (std-sphere)");
  cat->add_option("--m", c_m, "ustilovsky parameter m");
  cat->add_option("--k", c_k, "ustilovsky twist power");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }
  opts.seed_set = seed_opt->count() > 0;
  opts.samples_set = samples_opt->count() > 0;
  opts.tol_set = tol_opt->count() > 0;
  opts.h_set = h_opt->count() > 0;

  if (*classify) return cmd_classify(genus, word_text, system_path, opts, out);
  if (*thm1) return cmd_embed(synth_single_node(t_n, t_k, t_l), emit, out);
  if (*type1) return cmd_embed(synth_type1(open_book_from_json(slurp(ob_path))), emit, out);
  if (*surface) return cmd_embed(synth_surface(s_genus, parse_word(s_word)), emit, out);
  if (*verify) return cmd_verify(cert_path, report_path, opts, out);
  if (*cat) {
    CatalogRequest req;
    if (cat_name == "xi-n" || cat_name == "xi_n")
      req.which = "xi_n";
    else if (cat_name == "rp3")
      req.which = "rp3";
    else if (cat_name == "ustilovsky")
      req.which = "ustilovsky";
    else if (cat_name == "std-sphere" || cat_name == "std_sphere")
      req.which = "std_sphere";
    else
      throw ParseError("unknown catalog name: " + cat_name);
    req.n = c_n;
    req.m = c_m;
    req.k = c_k;
    out << open_book_to_json(catalog(req)) << "\n";
    return 0;
  }
  return 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_guarded(args, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace obk::cli
