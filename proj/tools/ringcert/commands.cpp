#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ringcert/errors.hpp"
#include "ringcert/rational.hpp"

namespace ringcert::cli {
namespace {

using example::ExampleInstance;

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// Writes to cfg_out when set, otherwise to `fallback`.
void emit(const std::string& text, const std::string& cfg_out, std::ostream& fallback) {
  if (cfg_out.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(cfg_out);
  if (!file) throw UsageError("cannot write '" + cfg_out + "'");
  file << text;
}

ExampleInstance load_or_build(const RunConfig& cfg) {
  if (!cfg.instance_file.empty()) {
    ExampleInstance inst = example::instance_from_json(read_json_file(cfg.instance_file));
    if (inst.d > cfg.dim_cap)
      throw UsageError("instance dimension " + std::to_string(inst.d) + " exceeds the cap " +
                       std::to_string(cfg.dim_cap));
    if (cfg.r_max && *cfg.r_max >= inst.precision) throw UsageError("--rmax must be below the instance precision");
    return inst;
  }
  return example::build(cfg.dim, cfg.precision, cfg.seed, cfg.parsed_order());
}

std::string describe_instance(const ExampleInstance& inst) {
  std::ostringstream out;
  out << "d = " << inst.d << ", h = " << inst.h << ", N = " << inst.precision << ", seed = " << inst.seed
      << ", order = " << inst.order_tag() << "\n";
  for (std::size_t i = 0; i < inst.series.size(); ++i) {
    out << inst.series[i].label() << " = ";
    for (std::size_t j = 1; j < inst.precision; ++j) {
      if (j > 1) out << " + ";
      out << format_rational(inst.series[i].coefficient(j)) << "*x^" << j;
    }
    out << " + O(x^" << inst.precision << ")\n";
  }
  const auto fs = inst.f_polynomials();
  for (std::size_t i = 0; i < fs.size(); ++i) out << "f_" << (i + 1) << " = " << fs[i].to_string() << "\n";
  out << "xi = " << inst.xi_polynomial().to_string() << "\n";
  return out.str();
}

}  // namespace

void RunConfig::validate() const {
  if (instance_file.empty()) {
    if (dim < 3) throw UsageError("--dim must be at least 3");
    if (dim > dim_cap)
      throw UsageError("--dim " + std::to_string(dim) + " exceeds the cap " + std::to_string(dim_cap) +
                       " (raise --dim-cap)");
    if (precision < 2 || precision > 32) throw UsageError("--precision must lie in 2..32");
    if (r_max && *r_max >= precision) throw UsageError("--rmax must be below --precision");
  }
  if (n_max < 1) throw UsageError("--nmax must be at least 1");
  if (r_max && *r_max < 1) throw UsageError("--rmax must be at least 1");
  if (threads < 1) throw UsageError("--threads must be at least 1");
  const auto& known = example::check_families();
  for (const auto& c : checks)
    if (std::find(known.begin(), known.end(), c) == known.end()) throw UsageError("unknown check '" + c + "'");
  parsed_order();
}

std::optional<MonomialOrder> RunConfig::parsed_order() const {
  try {
    return example::parse_instance_order(order);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--order: ") + e.what());
  }
}

int cmd_build(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  cfg.validate();
  const ExampleInstance inst = example::build(cfg.dim, cfg.precision, cfg.seed, cfg.parsed_order());
  emit(cfg.format == Format::json ? example::to_json(inst).dump(2) + "\n" : describe_instance(inst), cfg.out, out);
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  const ExampleInstance inst = load_or_build(cfg);
  example::SuiteOptions options;
  options.enabled = cfg.checks;
  options.max_exponent = cfg.n_max;
  options.r_max = cfg.r_max;
  options.threads = cfg.threads;
  const auto cert = example::run_suite(inst, options);
  emit(cfg.format == Format::json ? example::to_json(cert).dump(2) + "\n" : example::render_text(cert), cfg.out, out);
  if (cert.pass) return kExitPass;
  for (const auto& rec : cert.checks) {
    if (rec.verdict != example::Verdict::fail) continue;
    err << "check failed: " << rec.name;
    for (const auto& f : rec.failures) err << " [" << f << "]";
    err << "\n";
  }
  return kExitFail;
}

int cmd_endpieces(const EndpieceConfig& cfg, std::ostream& out, std::ostream&) {
  cfg.run.validate();
  if (cfg.r < 1 || cfg.r >= cfg.run.precision) throw UsageError("--r must lie in 1..N-1");
  const auto labels = example::series_labels(cfg.run.dim);
  if (cfg.fixtures.size() > labels.size()) throw UsageError("too many fixture coefficient lists");
  std::vector<series::GenericSeries> seriess;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i < cfg.fixtures.size() && !cfg.fixtures[i].empty()) {
      std::vector<Rational> coeffs;
      try {
        for (const auto& c : cfg.fixtures[i]) coeffs.push_back(parse_rational(c));
      } catch (const ParseError& e) {
        throw UsageError(std::string("fixture coefficients: ") + e.what());
      }
      if (coeffs.size() > cfg.run.precision - 1) throw UsageError("fixture has more than N-1 coefficients");
      seriess.push_back(series::GenericSeries::fixture(labels[i], std::move(coeffs), cfg.run.precision));
    } else {
      seriess.push_back(series::GenericSeries::make_generic(cfg.run.seed, labels[i], cfg.run.precision));
    }
  }
  const ExampleInstance inst =
      example::build_from_series(cfg.run.dim, std::move(seriess), cfg.run.seed, cfg.run.parsed_order());

  std::ostringstream text;
  nlohmann::json doc{{"N", inst.precision}, {"r", cfg.r}, {"elements", nlohmann::json::array()}};
  bool all_ok = true;
  for (std::size_t i = 0; i < inst.f.size(); ++i) {
    const std::string name = inst.d == 3 ? (i == 0 ? "f" : "g") : "f_" + std::to_string(i + 1);
    const std::string uname = inst.d == 3 ? (i == 0 ? "u" : "v") : "u_" + std::to_string(i + 1);
    text << name << " = " << inst.f_polynomials()[i].to_string() << "  (mod x^" << inst.precision << ")\n";
    nlohmann::json levels = nlohmann::json::array();
    const auto first = series::endpiece(inst.f[i], 1);
    for (std::size_t j = 1; j <= cfg.r; ++j)
      text << "  b_" << j << " = " << first.b[j - 1].to_string() << "\n";
    for (std::size_t r = 1; r <= cfg.r; ++r) {
      const auto dec = series::endpiece(inst.f[i], r);
      const bool ok = series::reassemble(dec) == inst.f[i];
      all_ok = all_ok && ok;
      const Polynomial piece = series::to_polynomial(dec.endpiece, inst.ring);
      text << "  r = " << r << ": " << name << "_" << r << " = " << piece.to_string() << "  (mod x^"
           << dec.endpiece.precision() << "), " << uname << "_" << r << " = " << dec.u.to_string() << ", " << name
           << " = x^" << r << "*" << name << "_" << r << " + " << uname << "_" << r << "*x + "
           << dec.leading.to_string() << ": " << (ok ? "verified" : "MISMATCH") << "\n";
      levels.push_back({{"r", r},
                        {"endpiece", series::to_json(dec.endpiece)},
                        {"endpiece_polynomial", piece.to_string()},
                        {"u", to_json(dec.u)},
                        {"u_polynomial", dec.u.to_string()},
                        {"identity", ok}});
    }
    nlohmann::json bs = nlohmann::json::array();
    for (std::size_t j = 1; j <= cfg.r; ++j) bs.push_back(first.b[j - 1].to_string());
    doc["elements"].push_back({{"name", name},
                               {"series", series::to_json(inst.series[i])},
                               {"b", std::move(bs)},
                               {"levels", std::move(levels)}});
  }
  emit(cfg.run.format == Format::json ? doc.dump(2) + "\n" : text.str(), cfg.run.out, out);
  return all_ok ? kExitPass : kExitFail;
}

int cmd_membership(const MembershipConfig& cfg, std::ostream& out, std::ostream&) {
  auto load = [&]() -> std::pair<Ideal, Polynomial> {
    try {
      Ideal ideal = ideal_from_json(read_json_file(cfg.ideal_file));
      const nlohmann::json e = read_json_file(cfg.element_file);
      Polynomial p = e.is_string() ? parse_polynomial(e.get<std::string>(), ideal.vars())
                                   : polynomial_from_json(e, ideal.vars());
      return {std::move(ideal), std::move(p)};
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    } catch (const StructuralError& e) {
      throw UsageError(e.what());
    }
  };
  const auto [ideal, element] = load();

  nlohmann::json doc{{"element", element.to_string()}};
  std::ostringstream text;
  bool member = false;
  if (!cfg.local.empty()) {
    for (const auto& v : cfg.local)
      if (!ideal.vars().contains(v)) throw UsageError("--local: unknown variable '" + v + "'");
    const Ideal maximal = Ideal::coordinate(ideal.vars(), cfg.local, ideal.order());
    const auto cert = local_membership_certificate(element, ideal, maximal);
    member = cert.member;
    doc["mode"] = "local";
    doc["maximal_ideal"] = cfg.local;
    if (cfg.witness) doc["colon_basis"] = to_json(cert.colon_basis);
    text << (member ? "member" : "non-member") << " (localized at (";
    for (std::size_t i = 0; i < cfg.local.size(); ++i) text << (i ? ", " : "") << cfg.local[i];
    text << "))\n";
    if (cfg.witness) {
      text << "colon ideal (I : p), reduced Groebner basis:\n";
      for (const auto& g : cert.colon_basis) text << "  " << g.to_string() << "\n";
    }
  } else {
    const Polynomial remainder = ideal.normal_form(element);
    member = remainder.is_zero();
    doc["mode"] = "global";
    doc["normal_form"] = remainder.to_string();
    text << (member ? "member" : "non-member") << "\n";
    if (cfg.witness) {
      text << "normal form: " << remainder.to_string() << "\nreduced Groebner basis:\n";
      for (const auto& g : ideal.groebner_basis()) text << "  " << g.to_string() << "\n";
      doc["groebner_basis"] = to_json(ideal.groebner_basis());
    }
  }
  doc["member"] = member;
  emit(cfg.format == Format::json ? doc.dump(2) + "\n" : text.str(), cfg.out, out);
  return kExitPass;
}

}  // namespace ringcert::cli
