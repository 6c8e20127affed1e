// Command-line front end: normal forms, identity/centrality decisions,
// T-space membership and dimension queries, Grassmann evaluation, and the
// named verification checks.

#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "relfree/harness.hpp"
#include "relfree/io.hpp"
#include "relfree/parser.hpp"
#include "relfree/printer.hpp"

using nlohmann::json;
using namespace relfree;

namespace {

struct GlobalOpts {
  std::uint32_t p = 3;
  int n = 0;  // 0: derive from the input
  int max_deg = 18;
  std::size_t max_instances = 2'000'000;
  std::size_t max_frame = 5000;
  std::uint64_t seed = 0;
  int jobs = 0;
  bool json_out = false;
  std::string cache_path;
  int lmax = 2;

  Budget budget() const {
    return Budget{max_deg, max_frame, max_instances};
  }
};

std::string read_stdin() {
  std::ostringstream os;
  os << std::cin.rdbuf();
  return os.str();
}

// Polynomial arguments: an expression, a named q-polynomial "q:k:l", or '-'
// for stdin.
FreePoly parse_poly_arg(const std::string& arg, PrimeField field, int n) {
  std::string text = arg == "-" ? read_stdin() : arg;
  if (text.rfind("q:", 0) == 0) {
    int k = 0, l = 0;
    char colon = 0;
    std::istringstream is(text.substr(2));
    if (is >> k >> colon >> l && colon == ':' && is.eof())
      return q_poly(field, k, l);
    throw ArgumentError("malformed q:k:l shorthand: " + text);
  }
  return parse(text, field, n);
}

// Spec arguments: named (C:n, Q:k:l, U:j, T3:k, V:l:k, R:k) or an inline
// semicolon-separated list of "ts:EXPR" / "ti:EXPR" entries.
GeneratorSpec parse_spec_arg(const std::string& arg, const GlobalOpts& g,
                             int ambient) {
  PrimeField field(g.p);
  auto nums = [&](const std::string& s, std::size_t want) {
    std::vector<int> out;
    std::istringstream is(s);
    std::string piece;
    while (std::getline(is, piece, ':')) out.push_back(std::stoi(piece));
    if (out.size() != want)
      throw ArgumentError("malformed spec name: " + arg);
    return out;
  };
  if (arg.rfind("C:", 0) == 0) {
    auto v = nums(arg.substr(2), 1);
    return spec_C(field, v[0], g.lmax, ambient);
  }
  if (arg.rfind("Q:", 0) == 0) {
    auto v = nums(arg.substr(2), 2);
    return spec_Q(field, v[0], v[1], ambient);
  }
  if (arg.rfind("U:", 0) == 0) {
    auto v = nums(arg.substr(2), 1);
    return spec_U(field, v[0], ambient);
  }
  if (arg.rfind("T3:", 0) == 0) {
    auto v = nums(arg.substr(3), 1);
    return spec_T3k(field, v[0], ambient);
  }
  if (arg.rfind("V:", 0) == 0) {
    auto v = nums(arg.substr(2), 2);
    return spec_V(field, v[0], v[1], ambient);
  }
  if (arg.rfind("R:", 0) == 0) {
    auto v = nums(arg.substr(2), 1);
    return spec_R(field, v[0], g.lmax, ambient);
  }

  GeneratorSpec spec{field, std::max(ambient, 1), {}, arg};
  std::istringstream is(arg);
  std::string entry;
  int max_var = 0;
  while (std::getline(is, entry, ';')) {
    std::size_t start = entry.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    entry = entry.substr(start);
    Closure closure;
    if (entry.rfind("ts:", 0) == 0)
      closure = Closure::TSpace;
    else if (entry.rfind("ti:", 0) == 0)
      closure = Closure::TIdeal;
    else
      throw ArgumentError(
          "inline generator entries need a 'ts:' or 'ti:' prefix: " + entry);
    FreePoly gen = parse(entry.substr(3), field);
    max_var = std::max(max_var, gen.max_variable());
    spec.generators.emplace_back(std::move(gen), closure);
  }
  if (spec.generators.empty())
    throw ArgumentError("empty generator list: " + arg);
  if (ambient <= 0) spec.n_vars = std::max(max_var, 1);
  return spec;
}

MultiDegree parse_multidegree(const std::string& text, int n_hint) {
  std::vector<int> deg;
  std::istringstream is(text);
  std::string piece;
  while (std::getline(is, piece, ',')) deg.push_back(std::stoi(piece));
  if (deg.empty()) throw ArgumentError("empty multidegree");
  while (static_cast<int>(deg.size()) < n_hint) deg.push_back(0);
  return MultiDegree(deg);
}

int emit(const GlobalOpts& g, const std::string& command, json result,
         json details, json witness, int exit_code) {
  if (g.json_out) {
    json out{{"command", command}, {"p", g.p},
             {"n", g.n == 0 ? json(nullptr) : json(g.n)},
             {"result", std::move(result)},
             {"details", std::move(details)},
             {"witness", std::move(witness)}};
    std::cout << out.dump(2) << "\n";
  } else {
    if (result.is_string())
      std::cout << result.get<std::string>() << "\n";
    else
      std::cout << result.dump() << "\n";
  }
  return exit_code;
}

// component_basis with optional file cache.
ComponentBasis get_component(const GeneratorSpec& spec, const MultiDegree& d,
                             const GlobalOpts& g) {
  if (!g.cache_path.empty()) {
    ComponentCache cache(g.cache_path);
    return cache.get(spec, d, g.budget(), g.jobs);
  }
  return component_basis(spec, d, g.budget(), g.jobs);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "relfree: exact computation in the relatively free algebra "
      "F_p<x1..xn> modulo the triple-commutator T-ideal"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--p", g.p, "odd prime coefficient modulus")
      ->capture_default_str();
  app.add_option("--n", g.n, "ambient variable count (0: derive)")
      ->capture_default_str();
  app.add_option("--max-deg", g.max_deg, "total degree budget")
      ->capture_default_str();
  app.add_option("--max-instances", g.max_instances,
                 "span instance budget")
      ->capture_default_str();
  app.add_option("--max-frame", g.max_frame, "frame size budget")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "seed for randomized checks")
      ->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads (0: OpenMP default)")
      ->capture_default_str();
  app.add_option("--lmax", g.lmax,
                 "truncation level for the q-family in C:n / R:k specs")
      ->capture_default_str();
  app.add_flag("--json", g.json_out, "emit a single JSON object");
  app.add_option("--cache", g.cache_path, "component cache file");

  std::string poly_arg, spec_arg, spec_b_arg, d_arg, geval_s;
  std::vector<std::string> subs, check_args;
  int grass_s = 8;

  CLI::App* nf = app.add_subcommand("nf", "normal form of a polynomial");
  nf->add_option("expr", poly_arg, "polynomial (or '-' for stdin)")
      ->required();

  CLI::App* identity =
      app.add_subcommand("identity", "is f an identity of the Grassmann "
                                     "algebra (zero mod the T-ideal)?");
  identity->add_option("expr", poly_arg)->required();

  CLI::App* central =
      app.add_subcommand("central", "is f central for the Grassmann algebra?");
  central->add_option("expr", poly_arg)->required();

  CLI::App* member_cmd =
      app.add_subcommand("member", "membership in a T-space/T-ideal span");
  member_cmd->add_option("expr", poly_arg)->required();
  member_cmd->add_option("--spec", spec_arg, "named or inline generator list")
      ->required();

  CLI::App* dim_cmd =
      app.add_subcommand("dim", "component dimension of a span");
  dim_cmd->add_option("--spec", spec_arg)->required();
  dim_cmd->add_option("--d", d_arg, "multidegree, e.g. 3,3")->required();

  CLI::App* equal_cmd =
      app.add_subcommand("equal", "compare two spans at a multidegree");
  equal_cmd->add_option("--a", spec_arg)->required();
  equal_cmd->add_option("--b", spec_b_arg)->required();
  equal_cmd->add_option("--d", d_arg)->required();

  CLI::App* geval =
      app.add_subcommand("geval", "evaluate in a finite Grassmann algebra");
  geval->add_option("expr", poly_arg)->required();
  geval->add_option("--s", grass_s, "generator count")->capture_default_str();
  geval->add_option("--sub", subs,
                    "substitution x<i>=<grassmann expr> (repeatable)");

  CLI::App* verify =
      app.add_subcommand("verify", "run named verification checks");
  verify->add_option("checks", check_args, "check ids, or 'all'");

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) {
         return true;
       }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
    PrimeField field(g.p);

    if (*nf) {
      FreePoly f = parse_poly_arg(poly_arg, field, g.n);
      Straightener str(field);
      NormalPoly a = str.straighten(f);
      return emit(g, "nf", to_string(a), to_json(a), nullptr, 0);
    }

    if (*identity || *central) {
      FreePoly f = parse_poly_arg(poly_arg, field, g.n);
      Straightener str(field);
      bool verdict = *identity ? str.is_identity_of_G(f)
                               : str.is_central_for_G(f);
      json details = nullptr;
      if (*central)
        details = {{"criterion", "commutator with a fresh variable is zero "
                                 "mod the T-ideal"}};
      return emit(g, *identity ? "identity" : "central", verdict, details,
                  nullptr, verdict ? 0 : 1);
    }

    if (*member_cmd) {
      FreePoly f = parse_poly_arg(poly_arg, field, g.n);
      int ambient = std::max({g.n, f.max_variable(), 1});
      GeneratorSpec spec = parse_spec_arg(spec_arg, g, 0);
      spec.n_vars = std::max(spec.n_vars, ambient);
      Straightener str(field);
      FreePoly widened(field, spec.n_vars);
      for (const auto& [w, c] : f.terms()) widened.add_term(w, c);
      NormalPoly target = str.straighten(widened);

      json details = json::array();
      bool verdict = true;
      for (const auto& [d, part] : split_components(target)) {
        ComponentBasis cb = get_component(spec, d, g);
        bool in = cb.contains(part);
        details.push_back({{"d", to_json(d)},
                           {"rank", cb.rank()},
                           {"frame_size", cb.frame().size()},
                           {"member", in}});
        verdict = verdict && in;
      }
      return emit(g, "member", verdict, details,
                  json{{"spec", spec.label}}, verdict ? 0 : 1);
    }

    if (*dim_cmd) {
      GeneratorSpec spec = parse_spec_arg(spec_arg, g, g.n);
      MultiDegree d = parse_multidegree(d_arg, spec.n_vars);
      spec.n_vars = std::max(spec.n_vars, d.size());
      ComponentBasis cb = get_component(spec, d, g);
      return emit(g, "dim", cb.rank(),
                  json{{"frame_size", cb.frame().size()},
                       {"d", to_json(d)},
                       {"spec", spec.label}},
                  nullptr, 0);
    }

    if (*equal_cmd) {
      GeneratorSpec a = parse_spec_arg(spec_arg, g, g.n);
      GeneratorSpec b = parse_spec_arg(spec_b_arg, g, g.n);
      int ambient = std::max(a.n_vars, b.n_vars);
      a.n_vars = b.n_vars = ambient;
      MultiDegree d = parse_multidegree(d_arg, ambient);
      ComponentBasis ca = get_component(a, d, g);
      ComponentBasis cb = get_component(b, d, g);
      bool verdict = ca == cb;
      return emit(g, "equal", verdict,
                  json{{"rank_a", ca.rank()}, {"rank_b", cb.rank()}},
                  nullptr, verdict ? 0 : 1);
    }

    if (*geval) {
      FreePoly f = parse_poly_arg(poly_arg, field, g.n);
      std::map<int, GrassmannElement> values;
      for (const std::string& s : subs) {
        auto eq = s.find('=');
        if (eq == std::string::npos || s.size() < 3 || s[0] != 'x')
          throw ArgumentError("substitutions look like x1=e1*e2: " + s);
        int var = std::stoi(s.substr(1, eq - 1));
        values.emplace(var,
                       parse_grassmann(s.substr(eq + 1), field, grass_s));
      }
      GrassmannElement img = evaluate(f, values);
      return emit(g, "geval", to_string(img),
                  json{{"s", grass_s}, {"zero", img.is_zero()},
                       {"central", is_central_element(img)}},
                  nullptr, 0);
    }

    if (*verify) {
      std::vector<std::string> ids;
      for (const std::string& c : check_args)
        if (c != "all") ids.push_back(c);
      CheckConfig cfg{field, g.seed, g.budget(), g.jobs};
      std::vector<CheckResult> results = run_checks(ids, cfg);
      bool any_fail = false;
      for (const CheckResult& r : results)
        any_fail = any_fail || r.verdict == "fail";
      if (g.json_out) {
        std::cout << report_json(results, cfg).dump(2) << "\n";
      } else {
        for (const CheckResult& r : results) {
          std::ostringstream line;
          line << r.id;
          line << std::string(r.id.size() < 14 ? 14 - r.id.size() : 1, ' ');
          line << r.verdict;
          std::cout << line.str() << "  (" << static_cast<long>(r.wall_ms)
                    << " ms)";
          if (r.verdict != "pass") std::cout << "  " << r.witness.dump();
          std::cout << "\n";
        }
        std::cout << (any_fail ? "FAIL" : "PASS") << "\n";
      }
      return any_fail ? 1 : 0;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
