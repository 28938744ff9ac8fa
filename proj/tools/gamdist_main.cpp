// Batch-capable command-line front end for the distribution library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gamdist/central.hpp"
#include "gamdist/erf.hpp"
#include "gamdist/gamma.hpp"
#include "gamdist/noncentral.hpp"
#include "gamdist/status.hpp"

namespace {

using gamdist::DistributionKind;
using gamdist::InversionTarget;

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  std::string s = buf;
  const auto epos = s.find('e');
  if (epos == std::string::npos) return s;  // nan/inf
  const int ex = std::atoi(s.c_str() + epos + 1);
  return s.substr(0, epos) + "e" + std::to_string(ex);
}

struct Request {
  std::string command;
  std::map<std::string, double> num;
  DistributionKind kind = DistributionKind::gamma_form;
  std::string target;  // "x" or "y" for inv-noncentral
  int digits = 17;
};

struct Reply {
  std::string line;
  int ierr = 0;
  std::string diag;
};

bool need(const Request& r, const char* k, double& out, Reply& rep) {
  const auto it = r.num.find(k);
  if (it == r.num.end()) {
    rep.ierr = 64;
    rep.diag = r.command + ": missing option --" + k;
    rep.line = "ierr=64";
    return false;
  }
  out = it->second;
  return true;
}

// Fill (p, q) from whichever of the two was given.
bool fill_pq(const Request& r, double& p, double& q, Reply& rep) {
  const bool hp = r.num.count("p") != 0;
  const bool hq = r.num.count("q") != 0;
  if (!hp && !hq) {
    rep.ierr = 64;
    rep.diag = r.command + ": need --p and/or --q";
    rep.line = "ierr=64";
    return false;
  }
  p = hp ? r.num.at("p") : 1.0 - r.num.at("q");
  q = hq ? r.num.at("q") : 1.0 - r.num.at("p");
  return true;
}

Reply run_one(const Request& r) {
  Reply rep;
  const int d = r.digits;
  auto scalar = [&](double (*fn)(double), const char* arg) {
    double x;
    if (!need(r, arg, x, rep)) return;
    try {
      rep.line = "value=" + fmt(fn(x), d);
    } catch (const std::exception& e) {
      rep.ierr = 2;
      rep.diag = e.what();
      rep.line = "ierr=2";
    }
  };
  try {
    if (r.command == "cdf-central") {
      double a, x;
      if (!need(r, "a", a, rep) || !need(r, "x", x, rep)) return rep;
      const auto res = gamdist::cdf_central(r.kind, a, x);
      rep.ierr = gamdist::cdf_central_ierr(res.status.code);
      rep.diag = res.status.detail;
      if (std::isfinite(res.prob.p))
        rep.line = "p=" + fmt(res.prob.p, d) + " q=" + fmt(res.prob.q, d) +
                   " ierr=" + std::to_string(rep.ierr);
      else
        rep.line = "ierr=" + std::to_string(rep.ierr);
    } else if (r.command == "inv-central") {
      double a, p, q;
      if (!need(r, "a", a, rep) || !fill_pq(r, p, q, rep)) return rep;
      const auto res = gamdist::inv_central(r.kind, a, p, q);
      rep.ierr = gamdist::inv_central_ierr(res.status.code);
      rep.diag = res.status.detail;
      if (std::isfinite(res.value))
        rep.line = "x=" + fmt(res.value, d) + " ierr=" + std::to_string(rep.ierr);
      else
        rep.line = "ierr=" + std::to_string(rep.ierr);
    } else if (r.command == "cdf-noncentral") {
      gamdist::NoncentralArgs args;
      if (!need(r, "mu", args.mu, rep) || !need(r, "x", args.x, rep) ||
          !need(r, "y", args.y, rep))
        return rep;
      const auto res = gamdist::cdf_noncentral(r.kind, args);
      rep.ierr = gamdist::cdf_noncentral_ierr(res.status.code);
      rep.diag = res.status.detail;
      if (std::isfinite(res.prob.p))
        rep.line = "p=" + fmt(res.prob.p, d) + " q=" + fmt(res.prob.q, d) +
                   " ierr=" + std::to_string(rep.ierr);
      else
        rep.line = "ierr=" + std::to_string(rep.ierr);
    } else if (r.command == "inv-noncentral") {
      double mu, p, q, fixed;
      if (!need(r, "mu", mu, rep) || !fill_pq(r, p, q, rep)) return rep;
      InversionTarget target;
      if (r.target == "x") {
        target = InversionTarget::noncentrality_x;
        if (!need(r, "y", fixed, rep)) return rep;
      } else if (r.target == "y") {
        target = InversionTarget::quantile_y;
        if (!need(r, "x", fixed, rep)) return rep;
      } else {
        rep.ierr = 64;
        rep.diag = "inv-noncentral: --target must be x or y";
        rep.line = "ierr=64";
        return rep;
      }
      const auto res = gamdist::inv_noncentral(r.kind, target, mu, p, q, fixed);
      rep.ierr = gamdist::inv_noncentral_ierr(res.status.code);
      rep.diag = res.status.detail;
      if (std::isfinite(res.value))
        rep.line = "x=" + fmt(res.value, d) + " ierr=" + std::to_string(rep.ierr);
      else
        rep.line = "ierr=" + std::to_string(rep.ierr);
    } else if (r.command == "erf") {
      scalar(&gamdist::erf, "x");
    } else if (r.command == "erfc") {
      scalar(&gamdist::erfc, "x");
    } else if (r.command == "erfc-scaled") {
      scalar(&gamdist::erfc_scaled, "x");
    } else if (r.command == "inverfc") {
      double y;
      if (!need(r, "y", y, rep)) return rep;
      try {
        rep.line = "x=" + fmt(gamdist::inverfc(y), d) + " ierr=0";
      } catch (const std::exception& e) {
        rep.ierr = 2;
        rep.diag = e.what();
        rep.line = "ierr=2";
      }
    } else if (r.command == "normal-cdf") {
      double x;
      if (!need(r, "x", x, rep)) return rep;
      const auto pq = gamdist::normal_cdf(x);
      rep.line = "p=" + fmt(pq.p, d) + " q=" + fmt(pq.q, d) + " ierr=0";
    } else if (r.command == "normal-quantile") {
      scalar(&gamdist::normal_quantile, "p");
    } else if (r.command == "gamma") {
      scalar(&gamdist::gammafun, "x");
    } else if (r.command == "loggam") {
      scalar(&gamdist::loggam, "x");
    } else if (r.command == "gamstar") {
      scalar(&gamdist::gamstar, "x");
    } else if (r.command == "quotgamm") {
      double x, y;
      if (!need(r, "x", x, rep) || !need(r, "y", y, rep)) return rep;
      try {
        rep.line = "value=" + fmt(gamdist::quotgamm(x, y), d);
      } catch (const std::exception& e) {
        rep.ierr = 2;
        rep.diag = e.what();
        rep.line = "ierr=2";
      }
    } else {
      rep.ierr = 64;
      rep.diag = "unknown command: " + r.command;
      rep.line = "ierr=64";
    }
  } catch (const std::exception& e) {
    rep.ierr = 2;
    rep.diag = e.what();
    rep.line = "ierr=2";
  }
  return rep;
}

// Batch line protocol: command,key=value,...
bool parse_batch_line(const std::string& line, Request& r) {
  std::stringstream ss(line);
  std::string tok;
  if (!std::getline(ss, tok, ',')) return false;
  r.command = tok;
  while (std::getline(ss, tok, ',')) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) return false;
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "kind") {
      if (val == "gamma") r.kind = DistributionKind::gamma_form;
      else if (val == "chi2") r.kind = DistributionKind::chi_square_form;
      else return false;
    } else if (key == "target") {
      r.target = val;
    } else if (key == "digits") {
      r.digits = std::atoi(val.c_str());
      if (r.digits < 1 || r.digits > 17) return false;
    } else {
      char* end = nullptr;
      const double v = std::strtod(val.c_str(), &end);
      if (end == val.c_str() || *end != '\0' || !std::isfinite(v)) return false;
      r.num[key] = v;
    }
  }
  return !r.command.empty();
}

int run_batch(std::istream& in, int digits) {
  int exit_code = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Request r;
    r.digits = digits;
    Reply rep;
    if (!parse_batch_line(line, r)) {
      rep.ierr = 64;
      rep.line = "ierr=64";
      rep.diag = "malformed batch line: " + line;
    } else {
      rep = run_one(r);
    }
    std::cout << rep.line << "\n";
    if (!rep.diag.empty()) std::cerr << rep.diag << "\n";
    if (rep.ierr != 0 && exit_code == 0) exit_code = rep.ierr;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gamma and chi-square distribution functions (central and noncentral)"};
  app.require_subcommand(1);

  int digits = 17;
  app.add_option("--digits", digits, "significant digits in the output")
      ->check(CLI::Range(1, 17));

  struct Sub {
    CLI::App* cmd = nullptr;
    Request req;
    std::string kind_str = "gamma";
    std::map<std::string, double> opts;
  };
  std::vector<std::unique_ptr<Sub>> subs;

  auto add_cmd = [&](const std::string& name, const std::string& desc,
                     const std::vector<std::string>& args, bool kind,
                     bool target = false) {
    auto s = std::make_unique<Sub>();
    s->cmd = app.add_subcommand(name, desc);
    s->req.command = name;
    for (const auto& a : args) {
      s->opts[a] = 0.0;
      s->cmd->add_option("--" + a, s->opts[a], "");
    }
    if (kind)
      s->cmd->add_option("--kind", s->kind_str, "gamma or chi2")
          ->check(CLI::IsMember({"gamma", "chi2"}));
    if (target)
      s->cmd->add_option("--target", s->req.target, "x or y")
          ->check(CLI::IsMember({"x", "y"}));
    subs.push_back(std::move(s));
  };

  add_cmd("cdf-central", "central gamma/chi-square CDF pair", {"a", "x"}, true);
  add_cmd("inv-central", "invert the central CDF", {"a", "p", "q"}, true);
  add_cmd("cdf-noncentral", "noncentral gamma/chi-square CDF pair",
          {"mu", "x", "y"}, true);
  add_cmd("inv-noncentral", "invert the noncentral CDF", {"mu", "p", "q", "x", "y"},
          true, true);
  add_cmd("erf", "error function", {"x"}, false);
  add_cmd("erfc", "complementary error function", {"x"}, false);
  add_cmd("erfc-scaled", "exp(x^2) erfc(x)", {"x"}, false);
  add_cmd("inverfc", "inverse of erfc", {"y"}, false);
  add_cmd("normal-cdf", "standard normal tails", {"x"}, false);
  add_cmd("normal-quantile", "inverse normal lower tail", {"p"}, false);
  add_cmd("gamma", "gamma function", {"x"}, false);
  add_cmd("loggam", "log gamma function", {"x"}, false);
  add_cmd("gamstar", "regulated gamma function", {"x"}, false);
  add_cmd("quotgamm", "gamma quotient Gamma(x)/Gamma(y)", {"x", "y"}, false);

  std::string batch_path;
  CLI::App* batch = app.add_subcommand("batch", "run requests from a file ('-' for stdin)");
  batch->add_option("path", batch_path, "request file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 64;
  }

  if (batch->parsed()) {
    if (batch_path == "-") return run_batch(std::cin, digits);
    std::ifstream in(batch_path);
    if (!in) {
      std::cerr << "cannot read " << batch_path << "\n";
      return 66;
    }
    return run_batch(in, digits);
  }

  for (const auto& s : subs) {
    if (!s->cmd->parsed()) continue;
    Request r = s->req;
    r.digits = digits;
    r.kind = s->kind_str == "chi2" ? DistributionKind::chi_square_form
                                   : DistributionKind::gamma_form;
    for (const auto& [k, v] : s->opts)
      if (s->cmd->count("--" + k) > 0) r.num[k] = v;
    const Reply rep = run_one(r);
    std::cout << rep.line << "\n";
    if (!rep.diag.empty()) std::cerr << rep.diag << "\n";
    return rep.ierr;
  }
  return 64;
}
