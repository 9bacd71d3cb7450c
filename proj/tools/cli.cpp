#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <map>
#include <sstream>
#include <string_view>
#include <variant>

#include "asianq/error.hpp"
#include "asianq/gy_transform.hpp"
#include "asianq/hermite_price.hpp"
#include "asianq/yor_triple.hpp"

namespace asianq::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kTable2Scaling = "denormalized time-0 price C_0";
// Table 3 is the regression gate; the published digits carry about 1e-13.
constexpr double kTable3Tol = 1e-9;

std::string_view name(Command c) {
  switch (c) {
    case Command::price: return "price";
    case Command::transform: return "transform";
    case Command::tables: return "tables";
    case Command::mc: return "mc";
    case Command::xcheck: return "xcheck";
  }
  return "?";
}

std::string_view name(Route r) {
  switch (r) {
    case Route::laplace: return "laplace";
    case Route::hermite: return "hermite";
    case Route::yor: return "yor";
    case Route::mc: return "mc";
    case Route::automatic: return "auto";
  }
  return "?";
}

// Doubles rendered with round-trip precision for CSV.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json big_number(double log10_value) {
  const double e = std::floor(log10_value);
  return json{{"mantissa", std::pow(10.0, log10_value - e)}, {"exp10", static_cast<int>(e)}};
}

json diagnostics_json(const PriceResult& r) {
  json d = json::object();
  for (const auto& [k, v] : r.diagnostics) {
    std::visit([&](const auto& x) { d[k] = x; }, v);
  }
  return d;
}

json request_json(const RunRequest& req) {
  const MarketParams& m = req.market;
  json j;
  j["command"] = name(req.command);
  j["route"] = name(req.route);
  j["format"] = req.output_format == OutputFormat::csv ? "csv" : "json";
  j["market"] = {{"r", m.r},         {"delta", m.delta}, {"sigma", m.sigma},
                 {"t0", m.t0},       {"t", m.t},         {"T", m.T},
                 {"strike", m.K},    {"spot", m.spot},   {"accrued", m.accrued}};
  j["inversion"] = {{"terms", req.inversion.terms}};
  if (req.inversion.contour_shift) j["inversion"]["shift"] = *req.inversion.contour_shift;
  j["mc"] = {{"paths", req.mc.paths}, {"steps", req.mc.steps}, {"seed", req.mc.seed}};
  return j;
}

json normalized_json(const NormalizedParams& p) {
  return {{"nu", p.nu}, {"h", p.h}, {"q", p.q}, {"k", p.k}, {"q_star", p.q_star}};
}

json error_json(std::string_view kind, std::string_view message) {
  return json{{"error", {{"kind", kind}, {"message", message}}}};
}

RunOutput fail(int status, std::string_view kind, std::string_view message) {
  return {status, "", error_json(kind, message).dump() + "\n"};
}

PriceResult mc_as_result(const McEstimate& e) {
  PriceResult r;
  r.method = PriceMethod::monte_carlo;
  r.value = e.mean;
  r.error_estimate = e.std_error;
  r.diagnostics["paths"] = e.paths;
  if (e.warning) r.diagnostics["warning"] = *e.warning;
  return r;
}

PriceResult yor_as_result(const TripleIntegralReport& y) {
  PriceResult r;
  r.method = PriceMethod::yor_triple;
  r.value = y.price;
  r.error_estimate = y.abs_error;
  r.diagnostics["c_log10"] = y.c_log10;
  r.diagnostics["ln_integral"] = y.ln_integral;
  r.diagnostics["inner_psi_evals"] = y.inner_psi_evals;
  return r;
}

PriceResult closed_result(const NormalizedParams& p) {
  PriceResult r;
  r.method = PriceMethod::closed_form;
  r.value = price_nonpositive_q(p.nu, p.h, p.q);
  return r;
}

PriceResult laplace_with_escalation(const NormalizedParams& p, const RunRequest& req) {
  InversionConfig cfg = req.inversion;
  const int limit = req.escalate_terms ? 8 * cfg.terms : cfg.terms;
  while (true) {
    try {
      return price_asian_laplace(p.nu, p.h, p.q, cfg);
    } catch (const Error& e) {
      // Small q / h makes the Bromwich series converge slowly.
      if (e.kind() != ErrorKind::nonconvergence || 2 * cfg.terms > limit) throw;
      cfg.terms *= 2;
    }
  }
}

// Normalized price by a concrete route name as returned by resolve_route.
PriceResult price_by(const std::string& route, const NormalizedParams& p, const RunRequest& req) {
  if (route == "closed") return closed_result(p);
  if (route == "laplace") return laplace_with_escalation(p, req);
  if (route == "hermite") return price_hermite(p.nu, p.h, p.q);
  if (route == "yor") return yor_as_result(price_yor_triple(p.nu, p.h, p.q));
  return mc_as_result(mc_price(p.nu, p.h, p.q, req.mc));
}

void append_result(json& j, const MarketParams& m, const PriceResult& r) {
  j["result"] = {{"value", denormalize_price(m, r.value)},
                 {"normalized_value", r.value},
                 {"method", to_string(r.method)},
                 {"error_estimate", denormalize_price(m, r.error_estimate)}};
}

RunOutput cmd_price(const RunRequest& req) {
  const NormalizedParams p = normalize(req.market);
  const std::string route = resolve_route(req.route, p);
  const PriceResult r = price_by(route, p, req);
  if (req.output_format == OutputFormat::csv) {
    std::string s = "route,method,value,normalized_value,error_estimate,nu,h,q,k,q_star\n";
    s += route + "," + std::string(to_string(r.method)) + "," +
         num(denormalize_price(req.market, r.value)) + "," + num(r.value) + "," +
         num(denormalize_price(req.market, r.error_estimate)) + "," + num(p.nu) + "," + num(p.h) +
         "," + num(p.q) + "," + num(p.k) + "," + num(p.q_star) + "\n";
    return {0, s, ""};
  }
  json j;
  j["request"] = request_json(req);
  j["normalized"] = normalized_json(p);
  append_result(j, req.market, r);
  json d = diagnostics_json(r);
  d["route"] = route;
  d["table2_scaling"] = kTable2Scaling;
  j["diagnostics"] = d;
  return {0, j.dump(2) + "\n", ""};
}

RunOutput cmd_transform(const RunRequest& req) {
  const NormalizedParams p = normalize(req.market);
  if (!(p.q > 0.0)) {
    throw Error(ErrorKind::invalid_input, "transform needs q > 0");
  }
  const double abscissa = abscissa_of_convergence(p.nu);
  const cplx z(req.z_re.value_or(abscissa + 1.0), req.z_im);
  if (!(z.real() > abscissa)) {
    throw Error(ErrorKind::domain, "Re(z) must exceed the abscissa of convergence " +
                                       std::to_string(abscissa));
  }
  const TransformPoint closed = evaluate_transform(p.nu, p.q, z, TransformMethod::hypergeometric_closed_form);
  const TransformPoint weber = evaluate_transform(p.nu, p.q, z, TransformMethod::weber_quadrature);
  const double rel = std::abs(closed.value - weber.value) / std::abs(closed.value);
  if (req.output_format == OutputFormat::csv) {
    std::string s = "method,z_re,z_im,re,im\n";
    s += "closed_form," + num(z.real()) + "," + num(z.imag()) + "," + num(closed.value.real()) +
         "," + num(closed.value.imag()) + "\n";
    s += "weber_quadrature," + num(z.real()) + "," + num(z.imag()) + "," +
         num(weber.value.real()) + "," + num(weber.value.imag()) + "\n";
    return {0, s, ""};
  }
  json j;
  j["request"] = request_json(req);
  j["normalized"] = normalized_json(p);
  j["result"] = {{"z", {z.real(), z.imag()}},
                 {"abscissa", abscissa},
                 {"closed_form", {closed.value.real(), closed.value.imag()}},
                 {"weber_quadrature", {weber.value.real(), weber.value.imag()}},
                 {"relative_difference", rel}};
  return {0, j.dump(2) + "\n", ""};
}

RunOutput cmd_mc(const RunRequest& req) {
  const NormalizedParams p = normalize(req.market);
  const McEstimate price = mc_price(p.nu, p.h, p.q, req.mc);
  const McEstimate moment = mc_moment(p.nu, p.h, req.mc);
  const double exact = moment_A(p.nu, p.h);
  const double z_moment = moment.std_error > 0.0 ? (moment.mean - exact) / moment.std_error : 0.0;
  if (req.output_format == OutputFormat::csv) {
    std::string s = "quantity,estimate,std_error,reference\n";
    s += "normalized_price," + num(price.mean) + "," + num(price.std_error) + ",\n";
    s += "mean_A," + num(moment.mean) + "," + num(moment.std_error) + "," + num(exact) + "\n";
    return {0, s, ""};
  }
  json j;
  j["request"] = request_json(req);
  j["normalized"] = normalized_json(p);
  append_result(j, req.market, mc_as_result(price));
  j["moment"] = {{"estimate", moment.mean},
                 {"std_error", moment.std_error},
                 {"exact", exact},
                 {"z_score", z_moment}};
  if (price.warning) j["diagnostics"]["warning"] = *price.warning;
  j["diagnostics"]["table2_scaling"] = kTable2Scaling;
  return {0, j.dump(2) + "\n", ""};
}

RunOutput cmd_xcheck(const RunRequest& req) {
  const NormalizedParams p = normalize(req.market);
  std::vector<std::string> routes;
  if (p.q <= 0.0) {
    routes = {"closed", "mc"};
  } else {
    routes.push_back("laplace");
    if (std::abs(p.nu + 1.0) >= 1e-6 && p.nu > -4.0) routes.push_back("hermite");
    if (p.h >= kYorMinH) routes.push_back("yor");
    routes.push_back("mc");
  }
  struct Outcome {
    std::optional<PriceResult> result;
    std::string error_kind, error;
  };
  std::vector<std::future<Outcome>> jobs;
  for (const std::string& route : routes) {
    jobs.push_back(std::async(std::launch::async, [&req, &p, route] {
      Outcome o;
      try {
        o.result = price_by(route, p, req);
      } catch (const Error& e) {
        o.error_kind = to_string(e.kind());
        o.error = e.what();
      }
      return o;
    }));
  }
  std::vector<Outcome> outcomes;
  for (auto& f : jobs) outcomes.push_back(f.get());

  bool any_failed = false;
  json by_route = json::object();
  std::string csv = "route,method,normalized_value,value,error_estimate\n";
  for (std::size_t i = 0; i < routes.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (!o.result) {
      any_failed = true;
      by_route[routes[i]] = error_json(o.error_kind, o.error)["error"];
      csv += routes[i] + ",error,,,\n";
      continue;
    }
    by_route[routes[i]] = {{"normalized_value", o.result->value},
                           {"value", denormalize_price(req.market, o.result->value)},
                           {"method", to_string(o.result->method)},
                           {"error_estimate", o.result->error_estimate}};
    csv += routes[i] + "," + std::string(to_string(o.result->method)) + "," +
           num(o.result->value) + "," + num(denormalize_price(req.market, o.result->value)) + "," +
           num(o.result->error_estimate) + "\n";
  }
  json pairs = json::array();
  for (std::size_t i = 0; i < routes.size(); ++i) {
    for (std::size_t k = i + 1; k < routes.size(); ++k) {
      if (!outcomes[i].result || !outcomes[k].result) continue;
      const double d = outcomes[i].result->value - outcomes[k].result->value;
      json pj = {{"a", routes[i]}, {"b", routes[k]}, {"abs_difference", std::abs(d)}};
      // Monte Carlo differences are only meaningful in units of its error.
      for (const std::size_t m : {i, k}) {
        if (routes[m] == "mc" && outcomes[m].result->error_estimate > 0.0) {
          pj["mc_z_score"] = d / outcomes[m].result->error_estimate * (m == i ? 1.0 : -1.0);
        }
      }
      pairs.push_back(pj);
    }
  }
  const int status = any_failed ? kExitComputation : 0;
  if (req.output_format == OutputFormat::csv) return {status, csv, ""};
  json j;
  j["request"] = request_json(req);
  j["normalized"] = normalized_json(p);
  j["routes"] = by_route;
  j["pairwise"] = pairs;
  j["diagnostics"] = {{"table2_scaling", kTable2Scaling}};
  return {status, j.dump(2) + "\n", ""};
}

// ---- tables ----

struct Table1Cell {
  double T, sigma, mantissa;
  int exp10;
};

const Table1Cell kTable1[] = {
    {1.0, 0.2, 2.627, 213}, {1.0, 0.3, 2.265, 94}, {1.0, 0.4, 4.816, 52},
    {0.5, 0.2, 7.686, 427}, {0.5, 0.3, 5.717, 189}, {0.5, 0.4, 2.583, 106},
};

struct Table2Case {
  int id;
  double r, sigma, T, spot, reference;
};

const Table2Case kTable2[] = {
    {1, 0.02, 0.1, 1.0, 2.0, 0.056},   {2, 0.18, 0.3, 1.0, 2.0, 0.219},
    {3, 0.0125, 0.25, 2.0, 2.0, 0.172}, {4, 0.05, 0.5, 1.0, 1.9, 0.194},
    {5, 0.05, 0.5, 1.0, 2.0, 0.247},   {6, 0.05, 0.5, 1.0, 2.1, 0.307},
    {7, 0.05, 0.5, 2.0, 2.0, 0.352},
};

struct Table3Row {
  double sigma, reference;
};

const Table3Row kTable3[] = {
    {0.2, 0.00074155998788343},
    {0.3, 0.00217354504625037},
    {0.4, 0.00478100328341654},
    {0.5, 0.00890942045213227},
};

std::string ref_text(const Table1Cell& c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4ge%d", c.mantissa, c.exp10);
  return buf;
}

json table1(std::string& csv) {
  csv += "T,sigma,c_nu_h_mantissa,c_nu_h_exp10,printed_form_mantissa,printed_form_exp10,"
         "reference,relative_deviation,printed_form_relative_deviation\n";
  json rows = json::array();
  for (const Table1Cell& c : kTable1) {
    MarketParams m;
    m.r = 0.05;
    m.sigma = c.sigma;
    m.T = c.T;
    m.K = 1.0;
    m.spot = 1.0;
    const NormalizedParams p = normalize(m);
    const double l = c_const_log10(p.nu, p.h);
    const double lp = c_const_log10_printed(p.nu, p.h);
    const double lref = std::log10(c.mantissa) + c.exp10;
    const double dev = std::pow(10.0, l - lref) - 1.0;
    const double dev_p = std::pow(10.0, lp - lref) - 1.0;
    const json v = big_number(l);
    const json vp = big_number(lp);
    rows.push_back({{"T", c.T},
                    {"sigma", c.sigma},
                    {"nu", p.nu},
                    {"h", p.h},
                    {"c_nu_h", v},
                    {"printed_form", vp},
                    {"reference", {{"mantissa", c.mantissa}, {"exp10", c.exp10}}},
                    {"relative_deviation", dev},
                    {"printed_form_relative_deviation", dev_p}});
    csv += num(c.T) + "," + num(c.sigma) + "," + num(v["mantissa"].get<double>()) + "," +
           std::to_string(v["exp10"].get<int>()) + "," + num(vp["mantissa"].get<double>()) + "," +
           std::to_string(vp["exp10"].get<int>()) + "," + ref_text(c) + "," + num(dev) + "," + num(dev_p) + "\n";
  }
  return rows;
}

json table2(const RunRequest& req, std::string& csv) {
  csv += "case,r,sigma,T,S0,nu,2C_laplace,2C_hermite,2C_reference,deviation_laplace,"
         "deviation_hermite\n";
  json rows = json::array();
  for (const Table2Case& c : kTable2) {
    MarketParams m;
    m.r = c.r;
    m.sigma = c.sigma;
    m.T = c.T;
    m.K = 2.0;
    m.spot = c.spot;
    const NormalizedParams p = normalize(m);
    const double lap = denormalize_price(m, laplace_with_escalation(p, req).value);
    const double her = denormalize_price(m, price_hermite(p.nu, p.h, p.q).value);
    rows.push_back({{"case", c.id},
                    {"r", c.r},
                    {"sigma", c.sigma},
                    {"T", c.T},
                    {"S0", c.spot},
                    {"nu", p.nu},
                    {"laplace", lap},
                    {"hermite", her},
                    {"reference", c.reference},
                    {"deviation_laplace", lap - c.reference},
                    {"deviation_hermite", her - c.reference}});
    csv += std::to_string(c.id) + "," + num(c.r) + "," + num(c.sigma) + "," + num(c.T) + "," +
           num(c.spot) + "," + num(p.nu) + "," + num(lap) + "," + num(her) + "," +
           num(c.reference) + "," + num(lap - c.reference) + "," + num(her - c.reference) + "\n";
  }
  return rows;
}

json table3(std::string& csv, bool& regression) {
  csv += "sigma,C(h;q),reference,deviation\n";
  json rows = json::array();
  for (const Table3Row& row : kTable3) {
    MarketParams m;
    m.r = 0.09;
    m.sigma = row.sigma;
    m.T = 1.0;
    m.K = 1.0;
    m.spot = 1.0;
    const NormalizedParams p = normalize(m);
    const PriceResult r = price_hermite(p.nu, p.h, p.q);
    const double dev = r.value - row.reference;
    const bool ok = std::abs(dev) <= kTable3Tol;
    if (!ok) regression = true;
    rows.push_back({{"sigma", row.sigma},
                    {"nu", p.nu},
                    {"h", p.h},
                    {"q", p.q},
                    {"value", r.value},
                    {"reference", row.reference},
                    {"deviation", dev},
                    {"within_tolerance", ok}});
    csv += num(row.sigma) + "," + num(r.value) + "," + num(row.reference) + "," + num(dev) + "\n";
  }
  return rows;
}

RunOutput cmd_tables(const RunRequest& req) {
  const std::string& w = req.which;
  if (w != "1" && w != "2" && w != "3" && w != "all") {
    return fail(kExitUsage, "invalid_input", "--which must be 1, 2, 3 or all");
  }
  json j;
  j["request"] = {{"command", "tables"}, {"which", w}, {"inversion", {{"terms", req.inversion.terms}}}};
  std::string csv;
  bool regression = false;
  if (w == "1" || w == "all") j["table1"] = table1(csv);
  if (w == "2" || w == "all") {
    if (!csv.empty()) csv += "\n";
    j["table2"] = table2(req, csv);
    j["table2_scaling"] = kTable2Scaling;
  }
  if (w == "3" || w == "all") {
    if (!csv.empty()) csv += "\n";
    j["table3"] = table3(csv, regression);
    j["table3_tolerance"] = kTable3Tol;
  }
  RunOutput o;
  o.out = req.output_format == OutputFormat::csv ? csv : j.dump(2) + "\n";
  if (regression) {
    o.exit_status = kExitTableRegression;
    o.err = error_json("regression", "Table 3 deviates beyond tolerance").dump() + "\n";
  }
  return o;
}

}  // namespace

std::string resolve_route(Route requested, const NormalizedParams& p) {
  if (p.q <= 0.0) return "closed";
  switch (requested) {
    case Route::laplace: return "laplace";
    case Route::hermite: return "hermite";
    case Route::yor: return "yor";
    case Route::mc: return "mc";
    case Route::automatic: break;
  }
  return std::abs(p.nu + 1.0) < 1e-6 ? "laplace" : "hermite";
}

ParseOutcome parse_args(const std::vector<std::string>& args, const char* env_seed) {
  RunRequest req;
  CLI::App app{"Asian option pricing"};
  app.require_subcommand(1);
  const std::map<std::string, Route> routes = {{"laplace", Route::laplace},
                                               {"hermite", Route::hermite},
                                               {"yor", Route::yor},
                                               {"mc", Route::mc},
                                               {"auto", Route::automatic}};
  const std::map<std::string, OutputFormat> formats = {{"json", OutputFormat::json},
                                                       {"csv", OutputFormat::csv}};
  std::optional<std::uint64_t> seed;
  std::optional<double> shift;
  std::optional<double> z_re;

  auto market_flags = [&](CLI::App* sub) {
    MarketParams& m = req.market;
    sub->add_option("--r", m.r, "risk-free rate");
    sub->add_option("--delta", m.delta, "dividend yield");
    sub->add_option("--sigma", m.sigma, "volatility");
    sub->add_option("--t0", m.t0, "start of the averaging window");
    sub->add_option("--t", m.t, "valuation time");
    sub->add_option("--T", m.T, "maturity");
    sub->add_option("--strike", m.K, "strike");
    sub->add_option("--spot", m.spot, "spot at time t");
    sub->add_option("--accrued", m.accrued, "integral of the spot over [t0, t]");
    sub->add_option("--format", req.output_format, "json or csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--terms", req.inversion.terms, "Laplace inversion terms");
    sub->add_option("--shift", shift, "Bromwich contour shift");
    sub->add_option("--paths", req.mc.paths, "Monte Carlo paths");
    sub->add_option("--steps", req.mc.steps, "Monte Carlo time steps");
    sub->add_option("--seed", seed, "Monte Carlo seed (default: ASIANQ_SEED)");
  };

  auto* price = app.add_subcommand("price", "price one contract");
  market_flags(price);
  price->add_option("--route", req.route, "laplace, hermite, yor, mc or auto")
      ->transform(CLI::CheckedTransformer(routes, CLI::ignore_case));
  auto* transform = app.add_subcommand("transform", "evaluate the Laplace transform at one point");
  market_flags(transform);
  transform->add_option("--zre", z_re, "real part of z (default: abscissa + 1)");
  transform->add_option("--zim", req.z_im, "imaginary part of z");
  auto* tables = app.add_subcommand("tables", "reproduce the reference tables");
  tables->add_option("--which", req.which, "1, 2, 3 or all");
  tables->add_option("--format", req.output_format, "json or csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  tables->add_option("--terms", req.inversion.terms, "Laplace inversion terms");
  auto* mc = app.add_subcommand("mc", "Monte Carlo oracle");
  market_flags(mc);
  auto* xcheck = app.add_subcommand("xcheck", "run every applicable route and compare");
  market_flags(xcheck);

  ParseOutcome out;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out.early = {0, app.help(), ""};
    return out;
  } catch (const CLI::ParseError& e) {
    out.early = fail(kExitUsage, "invalid_input", e.what());
    return out;
  }

  if (price->parsed()) req.command = Command::price;
  if (transform->parsed()) req.command = Command::transform;
  if (tables->parsed()) req.command = Command::tables;
  if (mc->parsed()) req.command = Command::mc;
  if (xcheck->parsed()) req.command = Command::xcheck;
  req.inversion.contour_shift = shift;
  for (CLI::App* sub : {price, transform, tables, mc, xcheck}) {
    if (sub->parsed() && sub->count("--terms") > 0) req.escalate_terms = false;
  }
  req.z_re = z_re;
  if (seed) {
    req.mc.seed = *seed;
  } else if (env_seed && *env_seed) {
    try {
      std::size_t used = 0;
      req.mc.seed = std::stoull(env_seed, &used);
      if (used != std::string_view(env_seed).size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      out.early = fail(kExitUsage, "invalid_input", "ASIANQ_SEED is not an unsigned integer");
      return out;
    }
  }
  out.request = req;
  return out;
}

RunOutput run(const RunRequest& req) {
  try {
    switch (req.command) {
      case Command::price: return cmd_price(req);
      case Command::transform: return cmd_transform(req);
      case Command::tables: return cmd_tables(req);
      case Command::mc: return cmd_mc(req);
      case Command::xcheck: return cmd_xcheck(req);
    }
  } catch (const Error& e) {
    const int status = e.kind() == ErrorKind::invalid_input ? kExitUsage : kExitComputation;
    return fail(status, to_string(e.kind()), e.what());
  }
  return fail(kExitUsage, "invalid_input", "unknown command");
}

}  // namespace asianq::cli
