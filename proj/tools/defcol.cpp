// defcol: command-line front end for defective (c1,c2)-colouring tools.
//
// Exit codes: 0 success / colourable, 10 uncolourable or violation found,
// 2 input error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "defcol/defcol.hpp"

namespace {

using defcol::json;

constexpr int kExitOk = 0;
constexpr int kExitUnsat = 10;
constexpr int kExitInput = 2;

struct Common {
  std::string graph = "-";
  std::string caps = "uniform:1,3";
  std::string out;
};

std::vector<defcol::Graph> read_graphs(const std::string& source) {
  std::vector<defcol::Graph> graphs;
  if (source == "-") {
    graphs = defcol::read_graph6_stream(std::cin);
  } else {
    std::ifstream in(source);
    if (!in) throw defcol::InputError("cannot open graph file: " + source);
    graphs = defcol::read_graph6_stream(in);
  }
  if (graphs.empty()) throw defcol::InputError("no graphs in input");
  return graphs;
}

class Emitter {
 public:
  explicit Emitter(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw defcol::InputError("cannot open output file: " + path);
    }
  }
  void operator()(const json& j, bool compact) {
    std::ostream& os = file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout;
    os << (compact ? j.dump() : j.dump(2)) << '\n';
  }

 private:
  std::ofstream file_;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw defcol::InputError("bad integer list: " + text);
    out.push_back(v);
  }
  return out;
}

template <typename Fn>
int for_each_graph(const Common& common, bool use_caps, Fn&& fn) {
  const auto graphs = read_graphs(common.graph);
  const json caps_spec = use_caps ? defcol::caps_spec_to_json(common.caps) : json();
  Emitter emit(common.out);
  int code = kExitOk;
  for (const auto& g : graphs) {
    const defcol::CapacityMap caps = use_caps ? defcol::caps_from_json(caps_spec, g.order()) : defcol::CapacityMap();
    int rc = kExitOk;
    const json cert = fn(g, caps, rc);
    emit(cert, graphs.size() > 1);
    code = std::max(code, rc);
  }
  return code;
}

void add_common(CLI::App* cmd, Common& common, bool caps) {
  cmd->add_option("--graph", common.graph, "graph6 file, or - for stdin")->capture_default_str();
  if (caps) cmd->add_option("--caps", common.caps, "capacity map: JSON, JSON file, or uniform:J,K")->capture_default_str();
  cmd->add_option("--out", common.out, "write certificates to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Defective 2-colouring toolkit: exact solver, potentials, density, discharging audit, surveys"};
  app.require_subcommand(0, 1);
  std::string verify_path;
  app.add_option("--verify-certificate", verify_path, "re-check a certificate (file or -) and exit");

  Common common;
  std::string engine = "exact";
  std::uint64_t seed = 0;
  auto* solve = app.add_subcommand("solve", "decide c-colourability and emit a coloring/unsat certificate");
  add_common(solve, common, true);
  solve->add_option("--engine", engine, "exact or proof")->check(CLI::IsMember({"exact", "proof"}))->capture_default_str();
  solve->add_option("--seed", seed, "seed for the local-search stage of the proof engine");

  auto* critical = app.add_subcommand("critical", "test c-criticality with per-edge witnesses");
  add_common(critical, common, true);

  std::string filter = "all";
  auto* potential = app.add_subcommand("potential", "minimum potential over filtered vertex subsets");
  add_common(potential, common, true);
  potential->add_option("--filter", filter, "all, proper or nontrivial")
      ->check(CLI::IsMember({"all", "proper", "nontrivial"}))
      ->capture_default_str();

  auto* mad_cmd = app.add_subcommand("mad", "exact maximum average degree with a densest subset");
  add_common(mad_cmd, common, false);

  std::string a_text = "14/9", b_text = "5/9";
  bool strict = false;
  auto* sparse = app.add_subcommand("sparse", "test (a,b)-sparseness");
  add_common(sparse, common, false);
  sparse->add_option("--a", a_text, "slope a > 0, as p/q")->capture_default_str();
  sparse->add_option("--b", b_text, "offset b, as p/q")->capture_default_str();
  sparse->add_flag("--strict", strict, "require |E(H)| < a|V(H)| + b");

  auto* audit = app.add_subcommand("audit", "charges, discharging and forbidden-configuration scan");
  add_common(audit, common, true);

  std::string set_text, phi_text;
  auto* reduce_cmd = app.add_subcommand("reduce", "build the reduced instance for a coloured vertex subset");
  add_common(reduce_cmd, common, true);
  reduce_cmd->add_option("--set", set_text, "comma-separated vertex ids of S")->required();
  reduce_cmd->add_option("--phi", phi_text, "comma-separated colours of S, in the order of --set")->required();

  int max_n = 5, threads = 1;
  std::string check = "th0", witnesses_path;
  auto* survey = app.add_subcommand("survey", "check a colouring bound over all connected graphs up to max-n vertices");
  survey->add_option("--max-n", max_n, "largest order, 1..8")->capture_default_str();
  survey->add_option("--check", check, "th0, th0critical or potential-th1")
      ->check(CLI::IsMember({"th0", "th0critical", "potential-th1"}))
      ->capture_default_str();
  survey->add_option("--threads", threads, "worker threads")->capture_default_str();
  survey->add_option("--witnesses", witnesses_path, "th0: write graph6 and witness colouring per checked graph");
  survey->add_option("--out", common.out, "write the summary certificate to this file");

  int enum_n = 4;
  bool connected = false;
  auto* enumerate = app.add_subcommand("enumerate", "print one graph6 line per isomorphism class");
  enumerate->add_option("--n", enum_n, "order, 1..8")->required();
  enumerate->add_flag("--connected", connected, "connected graphs only");

  int rand_n = 6;
  double rand_p = 0.5;
  auto* random = app.add_subcommand("random", "print a G(n,p) graph in graph6");
  random->add_option("--n", rand_n, "order")->capture_default_str();
  random->add_option("--p", rand_p, "edge probability")->capture_default_str();
  random->add_option("--seed", seed, "seed")->capture_default_str();

  std::string cert_path = "-";
  auto* verify = app.add_subcommand("verify", "re-check a certificate");
  verify->add_option("--cert", cert_path, "certificate file, or - for stdin")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (!verify_path.empty() || *verify) {
      const std::string path = !verify_path.empty() ? verify_path : cert_path;
      json cert;
      try {
        if (path == "-") {
          cert = json::parse(std::cin);
        } else {
          std::ifstream in(path);
          if (!in) throw defcol::InputError("cannot open certificate: " + path);
          cert = json::parse(in);
        }
      } catch (const json::parse_error& e) {
        throw defcol::InputError(std::string("certificate JSON: ") + e.what());
      }
      const defcol::Verdict v = defcol::verify_certificate(cert);
      std::cout << json{{"valid", v.ok}, {"reason", v.reason}}.dump() << '\n';
      return v.ok ? kExitOk : kExitUnsat;
    }

    if (*solve) {
      return for_each_graph(common, true, [&](const defcol::Graph& g, const defcol::CapacityMap& c, int& rc) {
        json cert;
        if (engine == "proof") {
          const auto res = defcol::proof_guided_solve(g, c, {seed, 8});
          cert = defcol::solve_certificate(g, c, res.coloring, engine, &res.trace);
          rc = res.coloring ? kExitOk : kExitUnsat;
        } else {
          const auto phi = defcol::solve(g, c);
          cert = defcol::solve_certificate(g, c, phi, engine);
          rc = phi ? kExitOk : kExitUnsat;
        }
        return cert;
      });
    }
    if (*critical) {
      return for_each_graph(common, true, [&](const defcol::Graph& g, const defcol::CapacityMap& c, int&) {
        return defcol::critical_certificate(g, c, defcol::is_critical(g, c));
      });
    }
    if (*potential) {
      const auto f = defcol::subset_filter_from_string(filter);
      return for_each_graph(common, true, [&](const defcol::Graph& g, const defcol::CapacityMap& c, int&) {
        if (g.order() == 0) throw defcol::InputError("potential needs a nonempty graph");
        try {
          return defcol::potential_certificate(g, c, f, defcol::min_potential(g, c, f));
        } catch (const defcol::EmptySearchSpace& e) {
          throw defcol::InputError(e.what());
        }
      });
    }
    if (*mad_cmd) {
      return for_each_graph(common, false, [&](const defcol::Graph& g, const defcol::CapacityMap&, int&) {
        return defcol::mad_certificate(g, defcol::mad(g));
      });
    }
    if (*sparse) {
      const defcol::Rational a = defcol::Rational::parse(a_text), b = defcol::Rational::parse(b_text);
      if (a <= defcol::Rational(0)) throw defcol::InputError("--a must be positive");
      return for_each_graph(common, false, [&](const defcol::Graph& g, const defcol::CapacityMap&, int& rc) {
        if (g.order() == 0) throw defcol::InputError("sparse needs a nonempty graph");
        const auto s = defcol::is_ab_sparse(g, a, b, strict);
        rc = s.sparse ? kExitOk : kExitUnsat;
        return defcol::sparsity_certificate(g, a, b, strict, s);
      });
    }
    if (*audit) {
      return for_each_graph(common, true, [&](const defcol::Graph& g, const defcol::CapacityMap& c, int&) {
        return defcol::audit_certificate(g, c);
      });
    }
    if (*reduce_cmd) {
      const std::vector<int> members = parse_int_list(set_text);
      const std::vector<int> colors = parse_int_list(phi_text);
      if (members.size() != colors.size()) throw defcol::InputError("--set and --phi differ in length");
      return for_each_graph(common, true, [&](const defcol::Graph& g, const defcol::CapacityMap& c, int&) {
        defcol::Coloring phi(g.order(), 0);
        defcol::VertexSet s;
        for (std::size_t k = 0; k < members.size(); ++k) {
          if (members[k] < 0 || members[k] >= g.order()) throw defcol::InputError("--set vertex out of range");
          s.insert(members[k]);
          phi[members[k]] = static_cast<std::uint8_t>(colors[k]);
        }
        try {
          return defcol::reduction_certificate(g, c, s, phi, defcol::reduce(g, c, s, phi));
        } catch (const defcol::ReductionError& e) {
          throw defcol::InputError(e.what());
        }
      });
    }
    if (*survey) {
      if (max_n < 1 || max_n > defcol::kMaxEnumerationOrder) throw defcol::InputError("--max-n must lie in [1, 8]");
      const auto result = defcol::run_survey(max_n, defcol::survey_check_from_string(check), threads);
      if (!witnesses_path.empty()) {
        std::ofstream w(witnesses_path);
        if (!w) throw defcol::InputError("cannot open witness file: " + witnesses_path);
        for (const auto& r : result.records)
          if (r.coloring)
            w << json{{"graph6", defcol::write_graph6(r.graph)}, {"coloring", defcol::coloring_json(*r.coloring)}}.dump()
              << '\n';
      }
      Emitter emit(common.out);
      emit(defcol::survey_certificate(result), false);
      return result.total_violations() == 0 ? kExitOk : kExitUnsat;
    }
    if (*enumerate) {
      if (enum_n < 1 || enum_n > defcol::kMaxEnumerationOrder) throw defcol::InputError("--n must lie in [1, 8]");
      for (const auto& g : defcol::enumerate_graphs(enum_n, connected)) std::cout << defcol::write_graph6(g) << '\n';
      return kExitOk;
    }
    if (*random) {
      if (rand_n < 0 || rand_n > 62) throw defcol::InputError("--n must lie in [0, 62]");
      if (!(rand_p >= 0.0 && rand_p <= 1.0)) throw defcol::InputError("--p must lie in [0, 1]");
      std::cout << defcol::write_graph6(defcol::random_graph(rand_n, rand_p, seed)) << '\n';
      return kExitOk;
    }
    std::cout << app.help();
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "defcol: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "defcol: " << e.what() << '\n';
    return kExitInput;
  }
}
