// Command-line front end. Exit codes: 0 success, 2 invalid input or usage,
// 3 a checked inequality failed on this input, 1 internal error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "outerspace/outerspace.hpp"

namespace os = outerspace;
using os::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitCheck = 3;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// JSON numbers carry the same 10 significant digits as text output.
double r10(double v) { return std::isfinite(v) ? std::strtod(num(v).c_str(), nullptr) : v; }

Json rounded(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(r10(x));
  return a;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(os::parse_decimal(item));
  }
  if (out.empty()) throw os::MalformedInput("empty list '" + text + "'");
  return out;
}

struct Global {
  bool json = false;
  std::string csv_path;
  bool csv = false;
  int threads = 1;
  double eps = os::kDefaultEpsilon;
  int budget = 200;
};

class Csv {
 public:
  explicit Csv(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw os::MalformedInput("cannot write '" + path + "'");
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void emit_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

// Either explicit current files or an automorphism whose iterates
// approximate its pair of fixed currents.
struct PairSource {
  std::string mu_path;
  std::string nu_path;
  std::string phi_path;
  std::string word = "a";
  int k = 10;

  void add(CLI::App* sub) {
    sub->add_option("--mu", mu_path, "first current (JSON)");
    sub->add_option("--nu", nu_path, "second current (JSON)");
    sub->add_option("--phi", phi_path, "automorphism; its approximated pair is used instead of --mu/--nu");
    sub->add_option("--word", word, "seed word for --phi")->capture_default_str();
    sub->add_option("--k", k, "iterations for --phi")->capture_default_str();
  }

  std::pair<os::RationalCurrent, os::RationalCurrent> load() const {
    if (!phi_path.empty()) {
      if (!mu_path.empty() || !nu_path.empty()) throw os::MalformedInput("give either --phi or --mu/--nu");
      const auto phi = os::read_automorphism(phi_path);
      const auto pr = os::iwip_pair_approx(phi, os::parse_word(word, phi.rank()), k, os::unit_rose(phi.rank()));
      return {pr.forward, pr.backward};
    }
    if (mu_path.empty() || nu_path.empty()) throw os::MalformedInput("--mu and --nu are required");
    auto mu = os::read_current(mu_path);
    auto nu = os::read_current(nu_path, mu.rank());
    return {std::move(mu), std::move(nu)};
  }

  Json describe() const {
    if (!phi_path.empty()) return {{"phi", phi_path}, {"word", word}, {"k", k}};
    return {{"mu", mu_path}, {"nu", nu_path}};
  }
};

os::MarkedGraph start_or_rose(const std::string& path, int rank) {
  if (path.empty()) return os::unit_rose(rank);
  auto g = os::read_graph(path);
  os::require_same_rank(rank, g.rank());
  return g;
}

const char* shape_name(os::CandidateShape s) {
  switch (s) {
    case os::CandidateShape::Circle:
      return "circle";
    case os::CandidateShape::Bouquet:
      return "bouquet";
    case os::CandidateShape::Barbell:
      return "barbell";
  }
  return "";
}

Json min_json(const os::MinResult& r) {
  return {{"value", r10(r.value)},
          {"topology_visits", r.topology_visits},
          {"lp_solves", r.lp_solves},
          {"certificate_verified", r.certificate.verified},
          {"duality_gap", r10(r.certificate.gap)},
          {"budget_exhausted", r.budget_exhausted},
          {"local", r.local},
          {"point", os::to_json(r.point)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computations in the epsilon-spine of Outer space"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_flag("--json", g.json, "JSON output");
  app.add_option("--csv", g.csv_path, "CSV output, to stdout or the given file")->expected(0, 1);
  app.add_option("--threads", g.threads, "maximum worker threads")->capture_default_str();
  app.add_option("--eps", g.eps, "spine parameter epsilon")->capture_default_str();
  app.add_option("--budget", g.budget, "topology visits per minimization")->capture_default_str();

  std::function<int()> run;

  // dist ---------------------------------------------------------------
  std::string from_path, to_path;
  bool sym = false, witness = false;
  auto* dist = app.add_subcommand("dist", "Lipschitz distance d_L(X, Y)");
  dist->add_option("--from", from_path, "X (graph JSON)")->required();
  dist->add_option("--to", to_path, "Y (graph JSON)")->required();
  dist->add_flag("--sym", sym, "symmetrized distance d_L(X,Y) + d_L(Y,X)");
  dist->add_flag("--witness", witness, "print the witness candidate");
  dist->callback([&] {
    run = [&] {
      const auto x = os::read_graph(from_path);
      const auto y = os::read_graph(to_path);
      os::require_same_rank(x.rank(), y.rank());
      const auto fwd = os::stretch(x, y);
      double value = std::log(fwd.factor);
      if (sym) value += os::d_L(y, x);
      if (g.csv) {
        Csv csv(g.csv_path);
        csv.out() << "word,ratio\n";
        for (const auto& [w, r] : fwd.per_candidate) csv.out() << os::format_word(w) << ',' << num(r) << '\n';
      } else if (g.json) {
        emit_json({{"command", "dist"},
                   {"from", from_path},
                   {"to", to_path},
                   {"symmetric", sym},
                   {"value", r10(value)},
                   {"witness", os::format_word(fwd.witness)}});
      } else {
        std::cout << num(value) << '\n';
        if (witness) std::cout << "witness " << os::format_word(fwd.witness) << '\n';
      }
      return kExitOk;
    };
  });

  // translen -----------------------------------------------------------
  std::string graph_path, word_text;
  auto* translen = app.add_subcommand("translen", "translation length of a word");
  translen->add_option("--graph", graph_path, "graph JSON")->required();
  translen->add_option("--word", word_text, "word, e.g. \"a b'\"")->required();
  translen->callback([&] {
    run = [&] {
      const auto gr = os::read_graph(graph_path);
      const auto w = os::parse_word(word_text, gr.rank());
      const double v = os::length_of(gr, w);
      if (g.json) {
        emit_json({{"command", "translen"}, {"word", os::format_word(w)}, {"value", r10(v)}});
      } else {
        std::cout << num(v) << '\n';
      }
      return kExitOk;
    };
  });

  // systole ------------------------------------------------------------
  auto* sys = app.add_subcommand("systole", "shortest loop");
  sys->add_option("--graph", graph_path, "graph JSON")->required();
  sys->callback([&] {
    run = [&] {
      const auto gr = os::read_graph(graph_path);
      const auto s = os::systole(gr);
      if (g.json) {
        emit_json({{"command", "systole"}, {"value", r10(s.length)}, {"word", os::format_word(s.word)}});
      } else if (g.csv) {
        Csv csv(g.csv_path);
        csv.out() << "length,word\n" << num(s.length) << ',' << os::format_word(s.word) << '\n';
      } else {
        std::cout << num(s.length) << '\n' << "witness " << os::format_word(s.word) << '\n';
      }
      return kExitOk;
    };
  });

  // candidates ---------------------------------------------------------
  auto* cands = app.add_subcommand("candidates", "candidate loops of a graph");
  cands->add_option("--graph", graph_path, "graph JSON")->required();
  cands->callback([&] {
    run = [&] {
      const auto gr = os::read_graph(graph_path);
      const auto cs = os::candidates(gr);
      if (g.json) {
        Json a = Json::array();
        for (const auto& c : cs) {
          a.push_back({{"shape", shape_name(c.shape)}, {"word", os::format_word(c.word)},
                       {"length", r10(c.loop.length)}});
        }
        emit_json({{"command", "candidates"}, {"candidates", a}});
      } else {
        Csv csv(g.csv_path);
        std::ostream& out = g.csv ? csv.out() : std::cout;
        if (g.csv) out << "shape,word,length\n";
        for (const auto& c : cs) {
          out << shape_name(c.shape) << (g.csv ? "," : " ") << os::format_word(c.word) << (g.csv ? "," : " ")
              << num(c.loop.length) << '\n';
        }
      }
      return kExitOk;
    };
  });

  // pair ---------------------------------------------------------------
  std::string tree_path, current_path;
  auto* pair = app.add_subcommand("pair", "length pairing <T, nu>");
  pair->add_option("--tree", tree_path, "graph JSON")->required();
  pair->add_option("--current", current_path, "current JSON")->required();
  pair->callback([&] {
    run = [&] {
      const auto t = os::read_graph(tree_path);
      const auto nu = os::read_current(current_path, t.rank());
      const double v = os::pairing(t, nu);
      if (g.json) {
        emit_json({{"command", "pair"}, {"value", r10(v)}});
      } else {
        std::cout << num(v) << '\n';
      }
      return kExitOk;
    };
  });

  // iwip ---------------------------------------------------------------
  std::string phi_path, seed_word = "a", out_mu, out_nu;
  int iwip_k = 25;
  double tol = 1e-6;
  auto* iwip = app.add_subcommand("iwip", "approximate the fixed currents of an automorphism");
  iwip->add_option("--phi", phi_path, "automorphism JSON")->required();
  iwip->add_option("--seed", seed_word, "seed word")->capture_default_str();
  iwip->add_option("--k", iwip_k, "iterations")->capture_default_str();
  iwip->add_option("--tol", tol, "convergence tolerance")->capture_default_str();
  iwip->add_option("--out-mu", out_mu, "write the forward current");
  iwip->add_option("--out-nu", out_nu, "write the backward current");
  iwip->callback([&] {
    run = [&] {
      const auto phi = os::read_automorphism(phi_path);
      const auto pr =
          os::iwip_pair_approx(phi, os::parse_word(seed_word, phi.rank()), iwip_k, os::unit_rose(phi.rank()), tol);
      if (!out_mu.empty()) os::write_json_file(out_mu, os::to_json(pr.forward));
      if (!out_nu.empty()) os::write_json_file(out_nu, os::to_json(pr.backward));
      if (g.csv) {
        Csv csv(g.csv_path);
        csv.out() << "j,lambda_forward,lambda_backward\n";
        for (std::size_t j = 0; j < pr.history_forward.size(); ++j) {
          csv.out() << j << ',' << num(pr.history_forward[j]) << ',' << num(pr.history_backward[j]) << '\n';
        }
      } else if (g.json) {
        emit_json({{"command", "iwip"},
                   {"seed", os::format_word(pr.seed)},
                   {"k", iwip_k},
                   {"lambda_forward", r10(pr.lambda_forward)},
                   {"lambda_backward", r10(pr.lambda_backward)},
                   {"converged", pr.converged},
                   {"exponential", pr.exponential}});
      } else {
        std::cout << "lambda_forward " << num(pr.lambda_forward) << '\n'
                  << "lambda_backward " << num(pr.lambda_backward) << '\n'
                  << "converged " << (pr.converged ? "yes" : "no") << '\n'
                  << "exponential " << (pr.exponential ? "yes" : "no") << '\n';
      }
      return kExitOk;
    };
  });

  // min ----------------------------------------------------------------
  PairSource min_pair;
  double min_s = 0.0;
  std::string start_path, out_path;
  auto* mn = app.add_subcommand("min", "minimize <T, e^s mu + e^-s nu> over the spine");
  min_pair.add(mn);
  mn->add_option("--s", min_s, "parameter s")->capture_default_str();
  mn->add_option("--start", start_path, "start point (default unit rose)");
  mn->add_option("--out", out_path, "write the minimizer");
  mn->callback([&] {
    run = [&] {
      const auto [mu, nu] = min_pair.load();
      const auto r = os::minimize(os::weighted_sum(mu, nu, min_s), g.eps, start_or_rose(start_path, mu.rank()),
                                  g.budget);
      if (!out_path.empty()) os::write_json_file(out_path, os::to_json(r.point));
      if (g.json) {
        Json j = min_json(r);
        j["command"] = "min";
        j["s"] = r10(min_s);
        j["eps"] = r10(g.eps);
        emit_json(j);
      } else {
        std::cout << num(r.value) << '\n'
                  << "visits " << r.topology_visits << " lp_solves " << r.lp_solves << " certificate "
                  << (r.certificate.verified ? "verified" : "unverified")
                  << (r.budget_exhausted ? " budget_exhausted" : "") << '\n';
      }
      return kExitOk;
    };
  });

  // axis ---------------------------------------------------------------
  PairSource axis_pair;
  double ax_from = -3.0, ax_to = 3.0, ax_step = 0.25;
  std::string points_dir;
  auto* ax = app.add_subcommand("axis", "sample the line of minima");
  axis_pair.add(ax);
  ax->add_option("--from", ax_from, "first parameter")->capture_default_str();
  ax->add_option("--to", ax_to, "last parameter")->capture_default_str();
  ax->add_option("--step", ax_step, "grid step")->capture_default_str();
  ax->add_option("--start", start_path, "start point (default unit rose)");
  ax->add_option("--points-dir", points_dir, "write each sample point to this directory");
  ax->callback([&] {
    run = [&] {
      const auto [mu, nu] = axis_pair.load();
      const auto a = os::axis(mu, nu, ax_from, ax_to, ax_step, g.eps, g.budget, start_or_rose(start_path, mu.rank()));
      std::vector<std::string> files(a.samples.size());
      if (!points_dir.empty()) {
        std::filesystem::create_directories(points_dir);
        for (std::size_t i = 0; i < a.samples.size(); ++i) {
          files[i] = (std::filesystem::path(points_dir) / ("point_" + std::to_string(i) + ".json")).string();
          os::write_json_file(files[i], os::to_json(a.samples[i].point));
        }
      }
      std::vector<double> steps(a.samples.size(), 0.0);
      for (std::size_t i = 1; i < a.samples.size(); ++i) {
        steps[i] = os::d_sym(a.samples[i - 1].point, a.samples[i].point);
      }
      if (g.json) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < a.samples.size(); ++i) {
          rows.push_back({{"s", r10(a.samples[i].s)},
                          {"value", r10(a.samples[i].value)},
                          {"d_sym_to_prev", r10(steps[i])},
                          {"point", os::to_json(a.samples[i].point)}});
        }
        emit_json({{"command", "axis"},
                   {"pair", axis_pair.describe()},
                   {"eps", r10(g.eps)},
                   {"step", r10(ax_step)},
                   {"coarse_constant", r10(os::axis_coarse_constant(a))},
                   {"samples", rows}});
      } else {
        Csv csv(g.csv_path);
        std::ostream& out = g.csv ? csv.out() : std::cout;
        const char* sep = g.csv ? "," : " ";
        out << "s" << sep << "value" << sep << "d_sym_to_prev" << sep << "point_file\n";
        for (std::size_t i = 0; i < a.samples.size(); ++i) {
          out << num(a.samples[i].s) << sep << num(a.samples[i].value) << sep << num(steps[i]) << sep << files[i]
              << '\n';
        }
      }
      return kExitOk;
    };
  });

  // project ------------------------------------------------------------
  PairSource proj_pair;
  auto* proj = app.add_subcommand("project", "project a point to the axis");
  proj_pair.add(proj);
  proj->add_option("--tree", tree_path, "graph JSON")->required();
  proj->add_option("--out", out_path, "write the projection");
  proj->callback([&] {
    run = [&] {
      const auto [mu, nu] = proj_pair.load();
      const auto t = os::read_graph(tree_path);
      const double s = os::balance_param(t, mu, nu);
      const auto r = os::project(t, mu, nu, g.eps, g.budget);
      if (!out_path.empty()) os::write_json_file(out_path, os::to_json(r.point));
      if (g.json) {
        Json j = min_json(r);
        j["command"] = "project";
        j["s"] = r10(s);
        emit_json(j);
      } else {
        std::cout << num(r.value) << '\n' << "s " << num(s) << '\n';
      }
      return kExitOk;
    };
  });

  // check-minisline ----------------------------------------------------
  PairSource ms_pair;
  double ms_B = 0.0, ms_from = -6.0, ms_to = 6.0, ms_step = 0.5;
  std::string s_list = "1,2,3,4,5,6";
  auto* ms = app.add_subcommand("check-minisline", "coarse-geodesic bounds along the line of minima");
  ms_pair.add(ms);
  ms->add_option("--B", ms_B, "contraction constant (default: fitted)");
  ms->add_option("--s-list", s_list, "parameters to check")->capture_default_str();
  ms->add_option("--from", ms_from, "grid start for the fit")->capture_default_str();
  ms->add_option("--to", ms_to, "grid end for the fit")->capture_default_str();
  ms->add_option("--step", ms_step, "grid step")->capture_default_str();
  ms->callback([&] {
    run = [&] {
      const auto [mu, nu] = ms_pair.load();
      const auto a = os::axis(mu, nu, ms_from, ms_to, ms_step, g.eps, g.budget, os::unit_rose(mu.rank()));
      const auto fit = os::fit_B(a);
      const double B = ms_B > 0.0 ? ms_B : fit.B;
      const auto rep = os::check_minisline(a, B, parse_list(s_list));
      if (g.json) {
        Json rows = Json::array();
        for (const auto& r : rep.rows) {
          rows.push_back({{"s", r10(r.s)}, {"distance", r10(r.distance)}, {"lower", r10(r.lower)},
                          {"upper", r10(r.upper)}, {"margin", r10(r.margin())}, {"pass", r.pass()}});
        }
        emit_json({{"command", "check-minisline"},
                   {"pair", ms_pair.describe()},
                   {"eps", r10(g.eps)},
                   {"B", r10(B)},
                   {"B_fitted", r10(fit.B)},
                   {"B_fitted_at", r10(fit.s_attaining)},
                   {"rows", rows},
                   {"pass", rep.pass()}});
      } else {
        Csv csv(g.csv_path);
        std::ostream& out = g.csv ? csv.out() : std::cout;
        const char* sep = g.csv ? "," : " ";
        if (!g.csv) out << "B " << num(B) << " (fitted " << num(fit.B) << " at s=" << num(fit.s_attaining) << ")\n";
        out << "s" << sep << "distance" << sep << "lower" << sep << "upper" << sep << "margin" << sep << "pass\n";
        for (const auto& r : rep.rows) {
          out << num(r.s) << sep << num(r.distance) << sep << num(r.lower) << sep << num(r.upper) << sep
              << num(r.margin()) << sep << (r.pass() ? "yes" : "no") << '\n';
        }
      }
      return rep.pass() ? kExitOk : kExitCheck;
    };
  });

  // check-contracting --------------------------------------------------
  PairSource cc_pair;
  double cc_B = 0.0;
  os::SamplerConfig sampler;
  auto* cc = app.add_subcommand("check-contracting", "sample the five contraction clauses");
  cc_pair.add(cc);
  cc->add_option("--B", cc_B, "contraction constant (default: twice the fitted B)");
  cc->add_option("--from", ms_from, "grid start for the fit")->capture_default_str();
  cc->add_option("--to", ms_to, "grid end for the fit")->capture_default_str();
  cc->add_option("--step", ms_step, "grid step for the fit")->capture_default_str();
  cc->add_option("--seed", sampler.seed, "sampler seed")->capture_default_str();
  cc->add_option("--walks", sampler.walks, "random walks for clause 2")->capture_default_str();
  cc->add_option("--walk-steps", sampler.walk_steps, "steps per walk")->capture_default_str();
  cc->add_option("--adversarial-walks", sampler.adversarial_walks, "adversarial walks for clause 2")
      ->capture_default_str();
  cc->add_option("--sigma-samples", sampler.sigma_samples, "samples for clause 4")->capture_default_str();
  cc->add_option("--balanced-samples", sampler.balanced_samples, "balanced trees for clause 5")
      ->capture_default_str();
  cc->add_option("--far-samples", sampler.far_samples, "far trees for clause 5")->capture_default_str();
  cc->callback([&] {
    run = [&] {
      const auto [mu, nu] = cc_pair.load();
      const auto rose = os::unit_rose(mu.rank());
      double B = cc_B;
      double fitted = 0.0;
      if (!(B > 0.0)) {
        fitted = os::fit_B(os::axis(mu, nu, ms_from, ms_to, ms_step, g.eps, g.budget, rose)).B;
        B = 2.0 * fitted;
      }
      sampler.budget = g.budget;
      const auto rep = os::check_contracting(mu, nu, B, g.eps, sampler, rose);
      if (g.json) {
        Json clauses = Json::array();
        for (const auto& c : rep.clauses) {
          clauses.push_back({{"clause", c.clause}, {"pass", c.pass}, {"checked", c.checked},
                             {"worst", r10(c.worst)}, {"margin", r10(c.margin)}, {"witness", c.witness},
                             {"note", c.note}});
        }
        emit_json({{"command", "check-contracting"},
                   {"pair", cc_pair.describe()},
                   {"eps", r10(g.eps)},
                   {"B", r10(B)},
                   {"B_fitted", r10(fitted)},
                   {"seed", sampler.seed},
                   {"sampler",
                    {{"walks", sampler.walks},
                     {"walk_steps", sampler.walk_steps},
                     {"adversarial_walks", sampler.adversarial_walks},
                     {"adversarial_steps", sampler.adversarial_steps},
                     {"proposals", sampler.proposals},
                     {"sigma_samples", sampler.sigma_samples},
                     {"balanced_samples", sampler.balanced_samples},
                     {"far_samples", sampler.far_samples},
                     {"s_step", r10(sampler.s_step)}}},
                   {"clauses", clauses},
                   {"pass", rep.pass()}});
      } else {
        Csv csv(g.csv_path);
        std::ostream& out = g.csv ? csv.out() : std::cout;
        const char* sep = g.csv ? "," : " ";
        if (!g.csv) out << "B " << num(B) << " seed " << sampler.seed << '\n';
        out << "clause" << sep << "pass" << sep << "checked" << sep << "worst" << sep << "margin\n";
        for (const auto& c : rep.clauses) {
          out << c.clause << sep << (c.pass ? "yes" : "no") << sep << c.checked << sep << num(c.worst) << sep
              << num(c.margin) << '\n';
          if (!g.csv && !c.pass) out << "  witness " << c.witness << '\n';
          if (!g.csv && !c.note.empty()) out << "  note " << c.note << '\n';
        }
      }
      return rep.pass() ? kExitOk : kExitCheck;
    };
  });

  // ball-contract ------------------------------------------------------
  PairSource bc_pair;
  std::string center_path, radii_text = "1,2,3";
  int bc_samples = 200;
  double bc_slack = 0.5;
  bool skip_pre = false;
  os::BallSamplerConfig ball_cfg;
  auto* bc = app.add_subcommand("ball-contract", "diameters of projected balls");
  bc_pair.add(bc);
  bc->add_option("--center", center_path, "ball center (default: first seeded spine point clear of the axis)");
  bc->add_option("--radii", radii_text, "radii")->capture_default_str();
  bc->add_option("--samples", bc_samples, "samples per ball")->capture_default_str();
  bc->add_option("--slack", bc_slack, "allowed growth of the diameter from the first to the last radius")
      ->capture_default_str();
  bc->add_option("--from", ms_from, "axis grid start")->capture_default_str();
  bc->add_option("--to", ms_to, "axis grid end")->capture_default_str();
  bc->add_option("--step", ms_step, "axis grid step")->capture_default_str();
  bc->add_option("--seed", ball_cfg.seed, "sampler seed")->capture_default_str();
  bc->add_flag("--skip-precondition", skip_pre, "allow balls that meet the sampled axis");
  bc->callback([&] {
    run = [&] {
      const auto [mu, nu] = bc_pair.load();
      const auto radii = parse_list(radii_text);
      const auto rose = os::unit_rose(mu.rank());
      const auto a = os::axis(mu, nu, ms_from, ms_to, ms_step, g.eps, g.budget, rose);
      ball_cfg.budget = g.budget;
      os::MarkedGraph center = rose;
      if (!center_path.empty()) {
        center = os::read_graph(center_path);
      } else {
        center = os::ball_center(a, *std::max_element(radii.begin(), radii.end()) + 1.0, g.eps, ball_cfg.seed);
      }
      std::vector<os::BallProjection> res;
      for (double r : radii) res.push_back(os::ball_projection_diameter(mu, nu, center, r, bc_samples, g.eps, a,
                                                                        ball_cfg, skip_pre));
      const bool pass = res.back().diameter <= res.front().diameter + bc_slack;
      if (g.json) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < radii.size(); ++i) {
          rows.push_back({{"radius", r10(radii[i])}, {"diameter", r10(res[i].diameter)},
                          {"distinct_projections", res[i].distinct_projections}, {"samples", res[i].samples}});
        }
        emit_json({{"command", "ball-contract"},
                   {"pair", bc_pair.describe()},
                   {"eps", r10(g.eps)},
                   {"seed", ball_cfg.seed},
                   {"distance_to_axis", r10(res.front().distance_to_axis)},
                   {"slack", r10(bc_slack)},
                   {"balls", rows},
                   {"center", os::to_json(center)},
                   {"pass", pass}});
      } else {
        Csv csv(g.csv_path);
        std::ostream& out = g.csv ? csv.out() : std::cout;
        const char* sep = g.csv ? "," : " ";
        if (!g.csv) out << "distance_to_axis " << num(res.front().distance_to_axis) << '\n';
        out << "radius" << sep << "diameter" << sep << "distinct\n";
        for (std::size_t i = 0; i < radii.size(); ++i) {
          out << num(radii[i]) << sep << num(res[i].diameter) << sep << res[i].distinct_projections << '\n';
        }
        if (!g.csv) out << (pass ? "pass" : "fail") << '\n';
      }
      return pass ? kExitOk : kExitCheck;
    };
  });

  // tau ----------------------------------------------------------------
  PairSource tau_pair;
  std::vector<std::string> by_paths;
  std::string point_path;
  double tau_C = 0.0;
  std::uint64_t tau_seed = 1;
  auto* tau = app.add_subcommand("tau", "overlaps of translated axes and the ultrametric inequality");
  tau_pair.add(tau);
  tau->add_option("--by", by_paths, "translate the axis by this automorphism (repeatable)");
  tau->add_option("--point", point_path, "base point x (default: seeded random spine point)");
  tau->add_option("--C", tau_C, "overlap constant (default: largest consecutive step of the sampled axis)");
  tau->add_option("--seed", tau_seed, "seed for the default base point")->capture_default_str();
  tau->add_option("--from", ms_from, "axis grid start")->capture_default_str();
  tau->add_option("--to", ms_to, "axis grid end")->capture_default_str();
  tau->add_option("--step", ms_step, "axis grid step")->capture_default_str();
  tau->callback([&] {
    run = [&] {
      const auto [mu, nu] = tau_pair.load();
      const auto base = os::axis(mu, nu, ms_from, ms_to, ms_step, g.eps, g.budget, os::unit_rose(mu.rank()));
      std::vector<os::AxisSample> axes{base};
      for (const auto& p : by_paths) {
        const auto h = os::read_automorphism(p);
        os::require_same_rank(mu.rank(), h.rank());
        axes.push_back(os::translate(h, base));
      }
      os::MarkedGraph x = os::unit_rose(mu.rank());
      if (!point_path.empty()) {
        x = os::read_graph(point_path);
      } else {
        os::Rng rng(tau_seed);
        x = os::random_spine_point(rng, mu.rank(), g.eps);
      }
      const double C = tau_C > 0.0 ? tau_C : os::axis_coarse_constant(base);
      const auto m = os::tau_matrix(axes, x, C);
      const auto viol = os::ultrametric_violations(m, ms_step);
      if (g.json) {
        Json mj = Json::array();
        for (const auto& row : m) mj.push_back(rounded(row));
        Json vj = Json::array();
        for (const auto& v : viol) vj.push_back({v[0], v[1], v[2]});
        emit_json({{"command", "tau"},
                   {"pair", tau_pair.describe()},
                   {"eps", r10(g.eps)},
                   {"C", r10(C)},
                   {"step", r10(ms_step)},
                   {"seed", tau_seed},
                   {"tau", mj},
                   {"violations", vj},
                   {"pass", viol.empty()}});
      } else {
        Csv csv(g.csv_path);
        std::ostream& out = g.csv ? csv.out() : std::cout;
        const char* sep = g.csv ? "," : " ";
        if (!g.csv) out << "C " << num(C) << '\n';
        out << "i" << sep << "j" << sep << "tau\n";
        for (std::size_t i = 0; i < m.size(); ++i) {
          for (std::size_t j = 0; j < m.size(); ++j) out << i << sep << j << sep << num(m[i][j]) << '\n';
        }
        if (!g.csv) {
          for (const auto& v : viol) out << "violation " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
          out << (viol.empty() ? "pass" : "fail") << '\n';
        }
      }
      return viol.empty() ? kExitOk : kExitCheck;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  g.csv = app.get_option("--csv")->count() > 0;
  if (g.threads < 1) {
    std::cerr << "error: --threads must be at least 1\n";
    return kExitInput;
  }
  if (!(g.eps > 0.0)) {
    std::cerr << "error: --eps must be positive\n";
    return kExitInput;
  }
  os::set_thread_cap(g.threads);
  try {
    return run();
  } catch (const os::InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const os::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
