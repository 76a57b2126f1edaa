// Command-line front end: model ingestion plus analysis subcommands with
// deterministic CSV/JSON/DOT output.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "lindfrag/dynamics.hpp"
#include "lindfrag/effective.hpp"
#include "lindfrag/fragments.hpp"
#include "lindfrag/frustration.hpp"
#include "lindfrag/model.hpp"
#include "lindfrag/oracle.hpp"
#include "lindfrag/spectra.hpp"
#include "lindfrag/tfim.hpp"

namespace {

using namespace lindfrag;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitUsage = 64;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct ModelArgs {
  std::string path;
  std::string builtin;
  int n = 0;
  double J = 1.0;
  double kappa = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", path, "model JSON file");
    cmd->add_option("--builtin", builtin, "builtin model name (cluster_y, cluster_ziz)");
    cmd->add_option("--n", n, "builtin chain length");
    cmd->add_option("--J", J, "builtin coupling")->capture_default_str();
    cmd->add_option("--kappa", kappa, "builtin dissipation rate")->capture_default_str();
  }

  LindbladModel load() const {
    if (!builtin.empty()) {
      if (n <= 0) throw CLI::ValidationError("--builtin requires --n");
      return builtin_model(builtin, n, J, kappa);
    }
    if (path.empty()) throw CLI::ValidationError("need --model or --builtin");
    return model_from_file(path);
  }
};

struct Output {
  std::string path;
  std::ofstream file;

  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output file: " + path);
    }
    return file;
  }
};

int default_threads() {
  if (const char* env = std::getenv("LINDFRAG_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

PauliString parse_seed(std::string text, int n_qubits) {
  text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
  const auto p = PauliString::parse(text);
  if (p.n_qubits() != n_qubits)
    throw std::invalid_argument("seed length does not match the model size");
  return p;
}

TildeModel checked_tilde(const LindbladModel& model) {
  const auto report = validate(model);
  if (!report.ok()) {
    for (const auto& e : report.errors) std::cerr << "error: " << e << "\n";
    throw CLI::ValidationError("model validation failed");
  }
  return to_tilde(model);
}

// ---- subcommand bodies -----------------------------------------------------

int run_validate(const ModelArgs& margs, const std::string& format, Output& out) {
  const auto model = margs.load();
  const auto report = validate(model);
  if (format == "json") {
    json j{{"ok", report.ok()}, {"errors", report.errors}, {"warnings", report.warnings}};
    out.stream() << j.dump(2) << "\n";
  } else {
    for (const auto& e : report.errors) out.stream() << "error," << e << "\n";
    for (const auto& w : report.warnings) out.stream() << "warning," << w << "\n";
    out.stream() << "ok," << (report.ok() ? "true" : "false") << "\n";
  }
  return report.ok() ? kExitOk : kExitValidation;
}

int run_fragments(const ModelArgs& margs, bool histogram, const std::string& format,
                  Output& out) {
  const auto tm = checked_tilde(margs.load());
  if (histogram) {
    const auto counts = count_by_size(tm);
    std::uint64_t total = 0;
    for (const auto& [k, c] : counts) total += c;
    if (format == "json") {
      json bins = json::array();
      for (const auto& [k, c] : counts) bins.push_back({{"active_count", k}, {"count", c}});
      out.stream() << json{{"histogram", bins}, {"total", total}}.dump(2) << "\n";
    } else {
      out.stream() << "active_count,count\n";
      for (const auto& [k, c] : counts) out.stream() << k << "," << c << "\n";
      out.stream() << "total," << total << "\n";
    }
    return kExitOk;
  }
  FragmentEnumerator en(tm);
  Fragment frag;
  if (format == "json") {
    json rows = json::array();
    while (en.next(frag))
      rows.push_back({{"label", frag.label_string()},
                      {"active_count", frag.active_sites.size()},
                      {"dim", frag.dim}});
    out.stream() << json{{"fragments", rows}}.dump(2) << "\n";
  } else {
    out.stream() << "label,active_count,dim\n";
    while (en.next(frag))
      out.stream() << frag.label_string() << "," << frag.active_sites.size() << "," << frag.dim
                   << "\n";
  }
  return kExitOk;
}

int run_graph(const ModelArgs& margs, const std::string& seed_text, const std::string& dot_path,
              const std::string& format, Output& out) {
  const auto tm = checked_tilde(margs.load());
  Fragment frag;
  const bool with_fragment = !seed_text.empty();
  if (with_fragment) frag = fragment_of(tm, parse_seed(seed_text, tm.base.n_qubits));
  const auto graph = build_graph(tm, with_fragment ? &frag : nullptr);
  const auto claws = find_claws(graph);
  const auto comps = subsystem_components(graph);

  if (!dot_path.empty()) {
    std::ofstream dot(dot_path);
    if (!dot) throw std::runtime_error("cannot open output file: " + dot_path);
    dot << to_dot(graph);
  }

  if (format == "json") {
    json vs = json::array();
    for (std::size_t i = 0; i < graph.size(); ++i) {
      const auto& v = graph.vertices[i];
      vs.push_back({{"id", i},
                    {"kind", v.kind == TermKind::unitary ? "unitary" : "dissipative"},
                    {"string", v.string.str()},
                    {"frozen", v.frozen}});
    }
    json es = json::array();
    for (std::size_t i = 0; i < graph.size(); ++i)
      for (std::size_t j = i + 1; j < graph.size(); ++j)
        if (graph.adjacent(i, j)) es.push_back({i, j});
    out.stream() << json{{"vertices", vs},
                         {"edges", es},
                         {"claw_free", claws.empty()},
                         {"components", comps}}
                        .dump(2)
                 << "\n";
  } else {
    out.stream() << "vertex,kind,string,frozen\n";
    for (std::size_t i = 0; i < graph.size(); ++i) {
      const auto& v = graph.vertices[i];
      out.stream() << i << "," << (v.kind == TermKind::unitary ? "unitary" : "dissipative") << ","
                   << v.string.str() << "," << (v.frozen ? "true" : "false") << "\n";
    }
    out.stream() << "edge,i,j\n";
    for (std::size_t i = 0; i < graph.size(); ++i)
      for (std::size_t j = i + 1; j < graph.size(); ++j)
        if (graph.adjacent(i, j)) out.stream() << "edge," << i << "," << j << "\n";
    out.stream() << "claw_free," << (claws.empty() ? "true" : "false") << "\n";
    out.stream() << "components," << comps.size() << "\n";
  }
  return kExitOk;
}

int run_effective(const ModelArgs& margs, const std::string& seed_text, bool with_matrix,
                  int threads, const std::string& format, Output& out) {
  const auto tm = checked_tilde(margs.load());
  const auto frag = fragment_of(tm, parse_seed(seed_text, tm.base.n_qubits));
  const auto gen = restrict_generator(tm, frag, 14, threads);
  if (format == "json") {
    json terms = json::array();
    for (const auto& t : gen.terms)
      terms.push_back(
          {{"re", t.coeff.real()}, {"im", t.coeff.imag()}, {"ops", t.ops}});
    json j{{"label", frag.label_string()},
           {"active_sites", frag.active_sites},
           {"dim", gen.dim},
           {"terms", terms}};
    if (with_matrix && gen.has_matrix()) {
      json m = json::array();
      for (std::size_t r = 0; r < gen.dim; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < gen.dim; ++c)
          row.push_back({gen.matrix(r, c).real(), gen.matrix(r, c).imag()});
        m.push_back(row);
      }
      j["matrix"] = m;
    }
    out.stream() << j.dump(2) << "\n";
  } else {
    out.stream() << "label," << frag.label_string() << "\n";
    out.stream() << "dim," << gen.dim << "\n";
    out.stream() << "term,re_coeff,im_coeff,ops\n";
    for (const auto& t : gen.terms)
      out.stream() << "term," << fmt17(t.coeff.real()) << "," << fmt17(t.coeff.imag()) << ","
                   << t.ops << "\n";
    if (with_matrix && gen.has_matrix()) {
      out.stream() << "matrix,row,col,re,im\n";
      for (std::size_t r = 0; r < gen.dim; ++r)
        for (std::size_t c = 0; c < gen.dim; ++c)
          out.stream() << "matrix," << r << "," << c << "," << fmt17(gen.matrix(r, c).real())
                       << "," << fmt17(gen.matrix(r, c).imag()) << "\n";
    }
  }
  return kExitOk;
}

TfimSpec spec_from_flags(int m_param, std::vector<int> zeta, double theta, bool theta_set,
                         double J, double kappa) {
  TfimSpec spec;
  spec.n_sites = m_param + 1;
  if (zeta.size() == 2) {
    spec.zeta_l = zeta[0];
    spec.zeta_r = zeta[1];
  }
  if (theta_set) {
    spec.J = std::cos(theta * std::numbers::pi / 2);
    spec.kappa = std::sin(theta * std::numbers::pi / 2);
  } else {
    spec.J = J;
    spec.kappa = kappa;
  }
  return spec;
}

int run_tfim(const TfimSpec& spec, const std::string& format, Output& out) {
  const auto sol = obc_spectrum(spec);
  if (format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < sol.momenta.size(); ++i)
      rows.push_back({{"re_k", sol.momenta[i].real()},
                      {"im_k", sol.momenta[i].imag()},
                      {"re_eps", sol.energies[i].real()},
                      {"im_eps", sol.energies[i].imag()}});
    json j{{"modes", rows},
           {"max_residual", sol.max_residual},
           {"has_zero_mode", sol.has_zero_mode}};
    if (sol.zero_mode_momentum)
      j["zero_mode_momentum"] = {sol.zero_mode_momentum->real(), sol.zero_mode_momentum->imag()};
    out.stream() << j.dump(2) << "\n";
  } else {
    out.stream() << "re_k,im_k,re_eps,im_eps\n";
    for (std::size_t i = 0; i < sol.momenta.size(); ++i)
      out.stream() << fmt17(sol.momenta[i].real()) << "," << fmt17(sol.momenta[i].imag()) << ","
                   << fmt17(sol.energies[i].real()) << "," << fmt17(sol.energies[i].imag())
                   << "\n";
  }
  return kExitOk;
}

int run_spectrum(const ModelArgs& margs, const std::string& seed_text, int threads,
                 const std::string& format, Output& out) {
  const auto tm = checked_tilde(margs.load());
  const auto frag = fragment_of(tm, parse_seed(seed_text, tm.base.n_qubits));
  const auto gen = restrict_generator(tm, frag, 14, threads);
  if (!gen.has_matrix()) throw std::runtime_error("fragment exceeds the dense cap");
  auto spec = spectrum_of(gen.matrix, false, frag.label_string());
  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  if (format == "json") {
    json rows = json::array();
    for (const cplx v : spec.eigenvalues) rows.push_back({v.real(), v.imag()});
    out.stream() << json{{"label", spec.source_tag}, {"eigenvalues", rows}}.dump(2) << "\n";
  } else {
    out.stream() << "re,im\n";
    for (const cplx v : spec.eigenvalues)
      out.stream() << fmt17(v.real()) << "," << fmt17(v.imag()) << "\n";
  }
  return kExitOk;
}

std::vector<cplx> read_spectrum_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::vector<cplx> vals;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    char* end = nullptr;
    const double re = std::strtod(line.c_str(), &end);
    if (end == line.c_str()) continue;  // header
    const double im = std::strtod(line.c_str() + comma + 1, nullptr);
    vals.push_back({re, im});
  }
  if (vals.empty()) throw std::runtime_error("no eigenvalues in " + path);
  return vals;
}

void emit_stats(const SpectrumStats& stats, const std::string& format, Output& out) {
  if (format == "json") {
    json cr = json::array();
    for (const cplx z : stats.complex_ratios) cr.push_back({z.real(), z.imag()});
    out.stream() << json{{"f_r", stats.f_r},
                         {"eccentricity", stats.eccentricity},
                         {"complex_ratios", cr},
                         {"real_ratios", stats.real_ratios},
                         {"upper_retained", stats.upper_filter.retained},
                         {"upper_total", stats.upper_filter.total},
                         {"lower_retained", stats.lower_filter.retained},
                         {"lower_total", stats.lower_filter.total}}
                        .dump(2)
                 << "\n";
  } else {
    out.stream() << "f_r," << fmt17(stats.f_r) << "\n";
    out.stream() << "eccentricity," << fmt17(stats.eccentricity) << "\n";
    out.stream() << "upper_retained," << stats.upper_filter.retained << ","
                 << stats.upper_filter.total << "\n";
    out.stream() << "lower_retained," << stats.lower_filter.retained << ","
                 << stats.lower_filter.total << "\n";
    out.stream() << "complex_ratio,re,im\n";
    for (const cplx z : stats.complex_ratios)
      out.stream() << "complex_ratio," << fmt17(z.real()) << "," << fmt17(z.imag()) << "\n";
    out.stream() << "real_ratio,value\n";
    for (const double r : stats.real_ratios) out.stream() << "real_ratio," << fmt17(r) << "\n";
  }
}

int run_stats(const std::string& in_path, const std::string& format, Output& out) {
  ComplexSpectrum spec;
  spec.eigenvalues = read_spectrum_csv(in_path);
  emit_stats(spacing_ratios(spec), format, out);
  return kExitOk;
}

int run_echo(const ModelArgs& margs, const std::string& seed_text, int m_param,
             std::vector<int> zeta, double theta, bool theta_set, double tmax, int steps,
             int threads, const std::string& format, Output& out) {
  std::vector<double> times(steps);
  EchoSeries series;
  if (!seed_text.empty()) {
    const auto tm = checked_tilde(margs.load());
    const auto seed = parse_seed(seed_text, tm.base.n_qubits);
    const auto frag = fragment_of(tm, seed);
    const auto gen = restrict_generator(tm, frag, 14, threads);
    if (!gen.has_matrix()) throw std::runtime_error("fragment exceeds the dense cap");
    const auto members = fragment_members(tm, frag);
    std::size_t idx = members.size();
    for (std::size_t i = 0; i < members.size(); ++i)
      if (members[i] == seed.canonical()) idx = i;
    if (idx == members.size()) throw std::runtime_error("seed operator is not a fragment member");
    for (int i = 0; i < steps; ++i) times[i] = tmax * i / (steps - 1);
    std::vector<cplx> init(gen.dim, 0.0);
    init[idx] = 1.0;
    series = evolve_echo(gen, init, times);
  } else {
    if (m_param <= 0) throw CLI::ValidationError("need --seed-op with a model, or --M");
    const auto spec = spec_from_flags(m_param, std::move(zeta), theta, theta_set, 1.0, 0.0);
    for (int i = 0; i < steps; ++i) times[i] = tmax * i / (steps - 1);
    series = tfim_echo(spec, times);
  }

  const char* regime = series.regime == EchoRegime::oscillatory    ? "oscillatory"
                       : series.regime == EchoRegime::overdamped   ? "overdamped"
                                                                   : "undetermined";
  if (format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < series.times.size(); ++i)
      rows.push_back({{"t", series.times[i]},
                      {"re", series.values[i].real()},
                      {"im", series.values[i].imag()},
                      {"abs", std::abs(series.values[i])},
                      {"norm", series.norm_values[i]}});
    out.stream() << json{{"regime", regime},
                         {"extrema", count_echo_extrema(series)},
                         {"series", rows}}
                        .dump(2)
                 << "\n";
  } else {
    out.stream() << "t,re_echo,im_echo,abs_echo,norm\n";
    for (std::size_t i = 0; i < series.times.size(); ++i)
      out.stream() << fmt17(series.times[i]) << "," << fmt17(series.values[i].real()) << ","
                   << fmt17(series.values[i].imag()) << ","
                   << fmt17(std::abs(series.values[i])) << ","
                   << fmt17(series.norm_values[i]) << "\n";
    std::cerr << "regime: " << regime << "\n";
  }
  return kExitOk;
}

int run_rmt(std::size_t n, double chi, int samples, std::uint64_t seed, bool eigenvalues_only,
            const std::string& format, Output& out) {
  std::vector<ComplexSpectrum> specs;
  for (int s = 0; s < samples; ++s)
    specs.push_back(spectrum_of(rmt_sample(n, chi, seed + static_cast<std::uint64_t>(s)).matrix));

  double f_r_sum = 0, ecc_sum = 0;
  std::vector<cplx> ratios;
  for (const auto& spec : specs) {
    double scale = 0;
    for (const cplx v : spec.eigenvalues) scale = std::max(scale, std::abs(v));
    const RatioOptions opts{1e-10, 1. / 3};
    const auto stats = spacing_ratios(spec, opts);
    f_r_sum += stats.f_r;
    ecc_sum += stats.eccentricity;
    ratios.insert(ratios.end(), stats.complex_ratios.begin(), stats.complex_ratios.end());
  }
  const double f_r = f_r_sum / samples, ecc = ecc_sum / samples;

  if (format == "json") {
    json eigs = json::array();
    for (int s = 0; s < samples; ++s) {
      json row = json::array();
      for (const cplx v : specs[s].eigenvalues) row.push_back({v.real(), v.imag()});
      eigs.push_back(row);
    }
    json j{{"n", n}, {"chi", chi}, {"samples", samples}, {"seed", seed},
           {"f_r", f_r},  {"eccentricity", ecc}};
    j["eigenvalues"] = eigs;
    if (!eigenvalues_only) {
      json cr = json::array();
      for (const cplx z : ratios) cr.push_back({z.real(), z.imag()});
      j["complex_ratios"] = cr;
    }
    out.stream() << j.dump(2) << "\n";
  } else {
    out.stream() << "f_r," << fmt17(f_r) << "\n";
    out.stream() << "eccentricity," << fmt17(ecc) << "\n";
    out.stream() << "eig,sample,re,im\n";
    for (int s = 0; s < samples; ++s)
      for (const cplx v : specs[s].eigenvalues)
        out.stream() << "eig," << s << "," << fmt17(v.real()) << "," << fmt17(v.imag()) << "\n";
    if (!eigenvalues_only) {
      out.stream() << "ratio,re,im\n";
      for (const cplx z : ratios)
        out.stream() << "ratio," << fmt17(z.real()) << "," << fmt17(z.imag()) << "\n";
    }
  }
  return kExitOk;
}

int run_oracle(const ModelArgs& margs, int threads, const std::string& format, Output& out) {
  const auto tm = checked_tilde(margs.load());
  const auto super = build_superoperator(tm, threads);
  auto report = verify_fragmentation(tm, super);
  const auto cons = verify_conservation(tm, super);
  report.checks.insert(report.checks.end(), cons.checks.begin(), cons.checks.end());

  if (format == "json") {
    json rows = json::array();
    for (const auto& c : report.checks)
      rows.push_back({{"name", c.name}, {"pass", c.pass}, {"metric", c.metric}});
    out.stream() << json{{"checks", rows}, {"pass", report.pass()}}.dump(2) << "\n";
  } else {
    out.stream() << "check,pass,metric\n";
    for (const auto& c : report.checks)
      out.stream() << c.name << "," << (c.pass ? "pass" : "FAIL") << "," << fmt17(c.metric)
                   << "\n";
    out.stream() << "all," << (report.pass() ? "pass" : "FAIL") << ","
                 << report.checks.size() << "\n";
  }
  return report.pass() ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator-space fragmentation toolkit for Pauli-Lindblad models"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string format = "csv";
  Output out;
  int threads = default_threads();
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", out.path, "output file (default stdout)");
  app.add_option("--threads", threads, "worker threads for parallel kernels")
      ->check(CLI::PositiveNumber);

  ModelArgs margs;
  bool histogram = false;
  std::string seed_text, dot_path, stats_in;
  bool with_matrix = false;
  int m_param = 0;
  std::vector<int> zeta{1, 1};
  double theta = 0.0;
  double tfim_J = 1.0, tfim_kappa = 0.0;
  double tmax = 20.0;
  int steps = 400;
  std::size_t rmt_n = 256;
  double rmt_chi = 1.0;
  int rmt_samples = 1;
  std::uint64_t rmt_seed = 0;
  bool rmt_eigs_only = false;
  std::string oracle_check = "all";

  auto* c_validate = app.add_subcommand("validate", "check a model description");
  margs.attach(c_validate);

  auto* c_fragments = app.add_subcommand("fragments", "enumerate invariant fragments");
  margs.attach(c_fragments);
  c_fragments->add_flag("--histogram", histogram, "emit the size histogram instead of the list");

  auto* c_graph = app.add_subcommand("graph", "frustration graph, claws and components");
  margs.attach(c_graph);
  c_graph->add_option("--seed", seed_text, "fragment seed string (marks frozen vertices)");
  c_graph->add_option("--dot", dot_path, "write a DOT rendering to this file");

  auto* c_effective = app.add_subcommand("effective", "per-fragment pseudospin generator");
  margs.attach(c_effective);
  c_effective->add_option("--seed", seed_text, "fragment seed string")->required();
  c_effective->add_flag("--matrix", with_matrix, "also emit the dense matrix");

  auto* c_tfim = app.add_subcommand("tfim", "open-chain secular spectrum");
  c_tfim->add_option("--M", m_param, "chain parameter (M+1 sites)")->required();
  c_tfim->add_option("--zeta", zeta, "boundary field flags")->expected(2);
  auto* theta_opt = c_tfim->add_option("--theta", theta, "J=cos(theta pi/2), kappa=sin(...)");
  c_tfim->add_option("--J", tfim_J, "coupling")->capture_default_str();
  c_tfim->add_option("--kappa", tfim_kappa, "dissipation")->capture_default_str();

  auto* c_spectrum = app.add_subcommand("spectrum", "fragment eigenvalues");
  margs.attach(c_spectrum);
  c_spectrum->add_option("--seed", seed_text, "fragment seed string")->required();

  auto* c_stats = app.add_subcommand("stats", "spacing-ratio statistics of a spectrum CSV");
  c_stats->add_option("--in", stats_in, "CSV with re,im columns")->required();

  auto* c_echo = app.add_subcommand("echo", "operator Loschmidt echo");
  margs.attach(c_echo);
  c_echo->add_option("--seed-op", seed_text, "initial operator (fragment member string)");
  c_echo->add_option("--M", m_param, "chain parameter for the solvable-chain echo");
  c_echo->add_option("--zeta", zeta, "boundary field flags")->expected(2);
  auto* echo_theta_opt = c_echo->add_option("--theta", theta, "chain angle");
  c_echo->add_option("--tmax", tmax, "final time")->capture_default_str();
  c_echo->add_option("--steps", steps, "grid points")->check(CLI::Range(2, 1000000))
      ->capture_default_str();

  auto* c_rmt = app.add_subcommand("rmt", "pseudo-Hermitian random-matrix samples");
  c_rmt->add_option("--n", rmt_n, "matrix size (power of two)")->capture_default_str();
  c_rmt->add_option("--chi", rmt_chi, "symmetric-block weight")->capture_default_str();
  c_rmt->add_option("--samples", rmt_samples, "sample count")->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_rmt->add_option("--seed", rmt_seed, "base seed")->capture_default_str();
  c_rmt->add_flag("--eigenvalues-only", rmt_eigs_only, "skip the ratio listing");

  auto* c_oracle = app.add_subcommand("oracle", "brute-force superoperator cross-checks");
  margs.attach(c_oracle);
  c_oracle->add_option("--check", oracle_check, "check group")->check(CLI::IsMember({"all"}));

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (c_validate->parsed()) return run_validate(margs, format, out);
    if (c_fragments->parsed()) return run_fragments(margs, histogram, format, out);
    if (c_graph->parsed()) return run_graph(margs, seed_text, dot_path, format, out);
    if (c_effective->parsed())
      return run_effective(margs, seed_text, with_matrix, threads, format, out);
    if (c_tfim->parsed())
      return run_tfim(
          spec_from_flags(m_param, zeta, theta, theta_opt->count() > 0, tfim_J, tfim_kappa),
          format, out);
    if (c_spectrum->parsed()) return run_spectrum(margs, seed_text, threads, format, out);
    if (c_stats->parsed()) return run_stats(stats_in, format, out);
    if (c_echo->parsed())
      return run_echo(margs, seed_text, m_param, zeta, theta, echo_theta_opt->count() > 0, tmax,
                      steps, threads, format, out);
    if (c_rmt->parsed())
      return run_rmt(rmt_n, rmt_chi, rmt_samples, rmt_seed, rmt_eigs_only, format, out);
    if (c_oracle->parsed()) return run_oracle(margs, threads, format, out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
