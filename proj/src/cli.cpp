#include "fusion/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fusion/core.hpp"
#include "fusion/enumerate.hpp"
#include "fusion/error.hpp"
#include "fusion/extensions.hpp"
#include "fusion/fpdim.hpp"
#include "fusion/grading.hpp"
#include "fusion/ring_io.hpp"
#include "fusion/verify.hpp"

namespace fusion::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return fixed(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (!out.empty()) out += ' ';
      out += scalar_text(e);
    }
    return out;
  }
  if (v.is_object()) {
    std::string out;
    for (const auto& [k, e] : v.items()) {
      if (!out.empty()) out += ' ';
      out += k + "=" + scalar_text(e);
    }
    return out;
  }
  return v.dump();
}

// Records print as `key: value` lines; arrays of records or arrays of arrays
// repeat the key once per element.
void print_record(const Json& record, bool json, std::ostream& out) {
  if (json) {
    out << record.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : record.items()) {
    const bool repeated =
        value.is_array() && !value.empty() && (value.front().is_object() || value.front().is_array());
    if (repeated) {
      for (const auto& e : value) out << key << ": " << scalar_text(e) << "\n";
    } else {
      out << key << ": " << scalar_text(value) << "\n";
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RingDocument load(const std::string& path, bool validate = true) {
  return parse_ring(read_file(path), validate);
}

Json index_list(const IndexSet& s) { return Json(std::vector<Index>(s.begin(), s.end())); }

Json violations_json(const AxiomReport& report) {
  Json list = Json::array();
  for (const auto& v : report.violations) {
    list.push_back({{"axiom", v.axiom}, {"at", v.indices}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  return list;
}

Grading grading_or_universal(const RingDocument& doc) {
  return doc.grading ? *doc.grading : universal_grading(doc.ring);
}

FiniteGroup group_from_spec(const std::string& spec) {
  if (auto bundled = bundled_document(spec + ".group")) return parse_group(*bundled);
  if (spec.size() > 1 && spec[0] == 'z' &&
      spec.find_first_not_of("0123456789", 1) == std::string::npos) {
    return FiniteGroup::cyclic(std::stoul(spec.substr(1)));
  }
  return parse_group(read_file(spec));
}

IndexSet parse_index_set(const std::string& text) {
  IndexSet out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.insert(std::stoul(item));
  }
  return out;
}

Json report_json(const VerificationReport& r) {
  Json elims = Json::array();
  for (const auto& e : r.eliminations) {
    Json products = Json::array();
    for (const auto& p : e.candidate.self_dual_products) products.push_back(p.coefficients());
    Json dims = Json::array();
    for (const auto& d : e.candidate.dims) dims.push_back(d.value);
    Json item = {{"ordinal", e.candidate.ordinal},
                 {"size", e.candidate.size},
                 {"products", products},
                 {"dims", dims},
                 {"reason", std::string(reason_name(e.reason))},
                 {"value", e.value},
                 {"bound", e.bound}};
    if (e.shared_summand) item["shared"] = *e.shared_summand;
    elims.push_back(item);
  }
  Json survivors = Json::array();
  for (const auto& s : r.survivors) {
    Json products = Json::array();
    for (const auto& p : s.self_dual_products) products.push_back(p.coefficients());
    survivors.push_back({{"ordinal", s.ordinal}, {"size", s.size}, {"products", products}});
  }
  return {{"theorem", r.theorem},     {"base", r.base},
          {"probe", r.probe},         {"probe_dim", r.probe_dim.value},
          {"budget", r.budget.value}, {"max_size", r.max_size},
          {"max_mult", r.max_mult},   {"search_space", r.search_space},
          {"examined", r.examined},   {"eliminations", elims},
          {"survivors", survivors},   {"checks", r.checks},
          {"status", r.verified() ? "verified" : "failed"}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fusion ring toolkit: dimensions, gradings, extensions and factorizations"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Emit JSON instead of key: value lines");

  std::string file;
  auto* validate_cmd = app.add_subcommand("validate", "Check the fusion ring axioms");
  validate_cmd->add_option("file", file, "Ring document")->required();

  auto* fpdim_cmd = app.add_subcommand("fpdim", "Frobenius-Perron dimensions");
  fpdim_cmd->add_option("file", file, "Ring document")->required();

  auto* grading_cmd = app.add_subcommand("grading", "Universal grading");
  grading_cmd->add_option("file", file, "Ring document")->required();

  auto* slightly_cmd =
      app.add_subcommand("slightly-trivial", "Test whether every component has an invertible");
  slightly_cmd->add_option("file", file, "Ring document (universal grading if none given)")
      ->required();

  std::string group_spec;
  bool force = false;
  std::string output;
  auto* synth_cmd = app.add_subcommand("synthesize", "Build the split extension of a base ring");
  synth_cmd->add_option("file", file, "Base ring document")->required();
  synth_cmd->add_option("--group", group_spec, "zN, z2xz2 or a group table file")->required();
  synth_cmd->add_flag("--force", force, "Allow a non-commutative base");
  synth_cmd->add_option("-o,--output", output, "Write the ring document here");

  bool via_pointed = false;
  std::string left_spec;
  std::string right_spec;
  auto* factor_cmd = app.add_subcommand("factorize", "Exact factorization check");
  factor_cmd->add_option("file", file, "Ring document")->required();
  factor_cmd->add_flag("--via-pointed", via_pointed,
                       "Pointed part times trivial component, with hypothesis checks");
  factor_cmd->add_option("--left", left_spec, "Comma-separated basis indices");
  factor_cmd->add_option("--right", right_spec, "Comma-separated basis indices");

  std::vector<std::string> theorems;
  unsigned threads = 1;
  std::optional<std::size_t> max_size;
  std::optional<std::size_t> max_mult;
  auto* verify_cmd = app.add_subcommand("verify-theorems", "Run the invertible-free search");
  verify_cmd->add_option("theorem", theorems, "ising and/or rank3 (default: both)")
      ->check(CLI::IsMember({"ising", "rank3"}));
  verify_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-size", max_size, "Largest component size searched");
  verify_cmd->add_option("--max-mult", max_mult, "Largest multiplicity searched");

  std::size_t rank = 0;
  Count max_constant = 1;
  bool unguarded = false;
  auto* enum_cmd = app.add_subcommand("enumerate", "Census of small fusion rings");
  enum_cmd->add_option("--rank", rank, "Rank")->required();
  enum_cmd->add_option("--max", max_constant, "Largest structure constant")->required();
  enum_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  enum_cmd->add_flag("--unguarded", unguarded, "Lift the rank and constant guards");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitInputError;
  }

  try {
    if (*validate_cmd) {
      const RingDocument doc = load(file, false);
      AxiomReport report = validate_ring(doc.ring);
      if (report.passed() && doc.grading) report = validate_grading(doc.ring, *doc.grading);
      print_record({{"ring", doc.ring.name()},
                    {"rank", doc.ring.rank()},
                    {"passed", report.passed()},
                    {"violations", report.violations.size()},
                    {"violation", violations_json(report)}},
                   json, out);
      return report.passed() ? kExitOk : kExitNegative;
    }

    if (*fpdim_cmd) {
      const RingDocument doc = load(file);
      const auto dims = fp_dims(doc.ring);
      Json simples = Json::array();
      for (Index i = 0; i < dims.size(); ++i) {
        Json entry = {{"index", i}, {"value", dims[i].value}, {"radius", dims[i].radius}};
        if (dims[i].hi() < 2.0) {
          if (auto n = quantize_subtwo(dims[i])) entry["n"] = *n;
        }
        simples.push_back(entry);
      }
      const Dim total = fp_dim_ring(dims);
      print_record({{"ring", doc.ring.name()},
                    {"simple", simples},
                    {"total", total.value},
                    {"total_radius", total.radius}},
                   json, out);
      return kExitOk;
    }

    if (*grading_cmd) {
      const RingDocument doc = load(file);
      const Grading g = universal_grading(doc.ring);
      Json components = Json::array();
      for (Element e = 0; e < g.group.order(); ++e) {
        components.push_back({{"element", e}, {"members", index_list(g.component(e))}});
      }
      Json orders = Json::array();
      for (Element e = 0; e < g.group.order(); ++e) orders.push_back(g.group.element_order(e));
      print_record({{"ring", doc.ring.name()},
                    {"group_order", g.group.order()},
                    {"abelian", g.group.is_abelian()},
                    {"element_orders", orders},
                    {"component", components},
                    {"deg", g.degree}},
                   json, out);
      return kExitOk;
    }

    if (*slightly_cmd) {
      const RingDocument doc = load(file);
      const Grading g = grading_or_universal(doc);
      const SlightlyTrivialResult result = is_slightly_trivial(doc.ring, g);
      Json record = {{"ring", doc.ring.name()},
                     {"group_order", g.group.order()},
                     {"slightly_trivial", static_cast<bool>(result)}};
      if (result) {
        Json entries = Json::array();
        for (const auto& e : result.witness->entries) {
          entries.push_back({{"element", e.g}, {"delta", e.delta}, {"image", e.image}});
        }
        record["base"] = result.witness->base;
        record["witness"] = entries;
      } else {
        record["failing_components"] = result.failing;
      }
      print_record(record, json, out);
      return result ? kExitOk : kExitNegative;
    }

    if (*synth_cmd) {
      const RingDocument doc = load(file);
      const FiniteGroup group = group_from_spec(group_spec);
      const Extension ext = synthesize_slightly_trivial(doc.ring, group, force);
      const std::string text = emit_ring(ext.ring, ext.grading);
      if (!output.empty()) {
        std::ofstream(output, std::ios::binary) << text;
        const Dim total = fp_dim_ring(ext.ring);
        print_record({{"ring", ext.ring.name()},
                      {"rank", ext.ring.rank()},
                      {"fpdim", total.value},
                      {"invertibles", invertible_objects(ext.ring).size()},
                      {"written", output}},
                     json, out);
      } else if (json) {
        out << Json{{"document", text}}.dump(2) << "\n";
      } else {
        out << text;
      }
      return kExitOk;
    }

    if (*factor_cmd) {
      const RingDocument doc = load(file);
      const Grading g = grading_or_universal(doc);
      FactorizationResult result;
      if (via_pointed) {
        result = factorize_via_pointed(doc.ring, g);
      } else {
        const IndexSet left =
            left_spec.empty() ? invertible_objects(doc.ring) : parse_index_set(left_spec);
        const IndexSet right =
            right_spec.empty() ? g.component(g.group.identity()) : parse_index_set(right_spec);
        result = check_exact_factorization(doc.ring, left, right);
      }
      Json record = {{"ring", doc.ring.name()}, {"exact", static_cast<bool>(result)}};
      if (result) {
        record["left"] = index_list(result.factorization->left);
        record["right"] = index_list(result.factorization->right);
        Json pairs = Json::array();
        for (Index t = 0; t < result.factorization->pairing.size(); ++t) {
          const auto [a, b] = result.factorization->pairing[t];
          pairs.push_back({{"index", t}, {"left", a}, {"right", b}});
        }
        record["pair"] = pairs;
      } else {
        record["diagnostic"] = result.diagnostic;
      }
      print_record(record, json, out);
      return result ? kExitOk : kExitNegative;
    }

    if (*verify_cmd) {
      if (theorems.empty()) theorems = {"ising", "rank3"};
      bool all = true;
      for (const auto& t : theorems) {
        const VerificationReport report =
            verify_theorem(t, VerifyOptions{max_size, max_mult, threads});
        if (json) {
          out << report_json(report).dump(2) << "\n";
        } else {
          out << format_report(report);
        }
        all &= report.verified();
      }
      return all ? kExitOk : kExitNegative;
    }

    if (*enum_cmd) {
      EnumerationSpec spec;
      spec.rank = rank;
      spec.max_constant = max_constant;
      spec.unguarded = unguarded;
      spec.threads = threads;
      const Census census = run_census(spec);
      if (json) {
        Json rings = Json::array();
        for (const auto& r : census.rings) rings.push_back(emit_ring(r));
        Json anomalies = Json::array();
        for (const auto& a : census.anomalies) {
          anomalies.push_back({{"ring", a.ring}, {"what", a.what}});
        }
        out << Json{{"rank", rank},
                    {"max", max_constant},
                    {"count", census.rings.size()},
                    {"rings", rings},
                    {"anomalies", anomalies}}
                   .dump(2)
            << "\n";
      } else {
        out << "# census rank=" << rank << " max=" << max_constant
            << " count=" << census.rings.size() << " anomalies=" << census.anomalies.size()
            << "\n";
        for (const auto& a : census.anomalies) {
          out << "# anomaly " << census.rings[a.ring].name() << ": " << a.what << "\n";
        }
        for (const auto& r : census.rings) out << "\n" << emit_ring(r);
      }
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const AxiomFailure& e) {
    err << "axiom failure: " << e.what() << "\n";
    for (const auto& v : e.report().violations) {
      err << "  " << v.axiom << " at";
      for (Index i : v.indices) err << ' ' << i;
      err << ": " << v.lhs << " != " << v.rhs << "\n";
    }
    return kExitInputError;
  } catch (const TheoryViolation& e) {
    err << "theory violation: " << e.what() << "\n";
    return kExitNegative;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace fusion::cli
