// Command-line front end: validate SSP nets, compute semiflows, synthesize
// and enforce the control net, compose the supervised net, simulate the
// supervisory policy, and report the three-row reachability census.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ssp/analysis.hpp"

namespace {

using namespace ssp;

struct Options {
  std::string file;
  std::size_t budget = kDefaultNodeBudget;
  std::uint64_t seed = 0;
  std::string policy = "random";
  std::size_t steps = 100;
  bool reduce = false;
  std::string out_dir;
};

void write_artifact(const Options& opt, const std::string& name,
                    const std::string& content) {
  if (opt.out_dir.empty()) {
    std::cout << content;
    return;
  }
  std::filesystem::create_directories(opt.out_dir);
  std::ofstream f(std::filesystem::path(opt.out_dir) / name);
  f << content;
}

int cmd_validate(const Options& opt) {
  NetDocument doc = parse_net_file(opt.file);
  SspValidationReport rep = validate_ssp(doc);
  Report r;
  for (std::size_t i = 0; i < rep.conditions.size(); ++i) {
    std::string key = "condition_" + std::to_string(i + 1);
    r.add("validation", key, rep.conditions[i].ok ? "pass" : "fail");
    if (!rep.conditions[i].ok)
      r.add("validation", key + "_evidence", rep.conditions[i].evidence);
  }
  for (const auto& note : rep.notes) r.add("validation", "note", note);
  r.add("validation", "verdict", rep.all_ok() ? "ssp" : "not-ssp");
  write_artifact(opt, "validate.txt", r.str());
  return rep.all_ok() ? 0 : 1;
}

int cmd_semiflows(const Options& opt) {
  NetDocument doc = parse_net_file(opt.file);
  if (opt.reduce) doc = preprocess_reductions(doc);
  std::ostringstream out;
  int counter = 0;
  for (const Semiflow& x : minimal_t_semiflows(doc.net))
    out << multiset_text(x, doc.net.transitions,
                         "x" + std::to_string(++counter))
        << "\n";
  if (doc.decomposition)
    for (const AgentDecl& a : doc.decomposition->agents) {
      Net sub = agent_subnet(doc.net, a);
      for (const Semiflow& x : local_t_semiflows(doc.net, a))
        out << multiset_text(x, sub.transitions,
                             "x" + std::to_string(++counter) + " (" + a.name +
                                 ")")
            << "\n";
    }
  counter = 0;
  for (const Semiflow& y : minimal_p_semiflows(doc.net))
    out << multiset_text(y, doc.net.places, "y" + std::to_string(++counter))
        << "\n";
  write_artifact(opt, "semiflows.txt", out.str());
  return 0;
}

int cmd_synthesize(const Options& opt) {
  NetDocument doc = parse_net_file(opt.file);
  SynthesisOutcome syn = synthesize_pipeline(doc, opt.reduce);
  NetDocument ctrl_doc;
  ctrl_doc.name = doc.name + "_control";
  ctrl_doc.net = syn.control.net;
  ctrl_doc.m0 = syn.control.m0;
  write_artifact(opt, "control.net", serialize_net(ctrl_doc));
  Report r;
  r.add("structural", "subnets", (long long)syn.simplified.n_components);
  for (std::size_t i = 0; i < syn.classes.size(); ++i) {
    r.add("structural", "subnet_" + std::to_string(i + 1) + "_cf",
          syn.classes[i].cf ? "true" : "false");
    r.add("structural", "subnet_" + std::to_string(i + 1) + "_jf",
          syn.classes[i].jf ? "true" : "false");
  }
  r.add("structural", "verdict",
        syn.structurally_live ? "structurally-live" : "enforcement-required");
  write_artifact(opt, "structural.txt", r.str());
  return 0;
}

int cmd_enforce(const Options& opt) {
  NetDocument doc = parse_net_file(opt.file);
  if (doc.decomposition) {
    SynthesisOutcome syn = synthesize_pipeline(doc, opt.reduce);
    NetDocument out_doc;
    out_doc.name = doc.name + "_control_enforced";
    out_doc.net = syn.control.net;
    out_doc.m0 = syn.control.m0;
    write_artifact(opt, "control_enforced.net", serialize_net(out_doc));
    return 0;
  }
  // A bare net is treated as a (simplified control) subnet and enforced
  // directly.
  std::vector<Semiflow> xs = minimal_t_semiflows(doc.net);
  CheckAssignment checks = find_check_transitions(doc.net, xs);
  EnforcementResult res = enforce_liveness(doc.net, checks);
  NetDocument out_doc;
  out_doc.name = doc.name + "_enforced";
  out_doc.net = res.enforced;
  out_doc.m0 = res.m0;
  write_artifact(opt, "enforced.net", serialize_net(out_doc));
  return 0;
}

int cmd_compose(const Options& opt) {
  NetDocument doc = parse_net_file(opt.file);
  SynthesisOutcome syn = synthesize_pipeline(doc, opt.reduce);
  NetDocument composed = compose(doc, syn.control);
  write_artifact(opt, "composed.net", serialize_net(composed));
  return 0;
}

int cmd_simulate(const Options& opt, const std::string& script_path) {
  NetDocument doc = parse_net_file(opt.file);
  SynthesisOutcome syn = synthesize_pipeline(doc, opt.reduce);
  Marking mc0 = control_marking_from_plant(syn.control, doc, doc.m0);
  Policy policy = Policy::Random;
  std::vector<std::string> script;
  if (opt.policy == "exhaustive") {
    policy = Policy::Exhaustive;
  } else if (opt.policy.rfind("script:", 0) == 0 || !script_path.empty()) {
    policy = Policy::Scripted;
    std::string path = script_path.empty() ? opt.policy.substr(7) : script_path;
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open script " + path);
    std::string tok;
    while (in >> tok) script.push_back(tok);
  } else if (opt.policy != "random") {
    throw ParseError("unknown policy " + opt.policy);
  }
  RunResult res = run(doc, syn.control, mc0, policy, opt.seed, opt.steps,
                      script, opt.budget);
  std::ostringstream out;
  if (res.exhaustive) {
    Report r;
    add_census(r, "supervised", res.census);
    out << r.str();
  } else {
    for (const TraceStep& s : res.state.trace)
      out << s.index << " " << s.plant_trans << " "
          << (s.ctrl_trans.empty() ? "-" : s.ctrl_trans) << "\n";
    out << "verdict " << res.verdict;
    if (res.blocked_index >= 0) out << " at " << res.blocked_index;
    out << "\n";
  }
  write_artifact(opt, "trace.txt", out.str());
  return res.verdict == "blocked" ? 1 : 0;
}

int cmd_census(const Options& opt) {
  NetDocument doc = parse_net_file(opt.file);
  PipelineCensus pc = full_pipeline_census(doc, opt.budget);
  write_artifact(opt, "census.txt", pipeline_report(doc, pc).str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Liveness-enforcing supervisory control for SSP Petri nets"};
  app.require_subcommand(1);
  Options opt;
  std::string script_path;
  app.add_option("--budget", opt.budget, "reachability node budget");
  app.add_option("--seed", opt.seed, "random policy seed");
  app.add_flag("--reduce", opt.reduce, "apply net reductions first");
  app.add_option("--out", opt.out_dir, "output directory (default: stdout)");

  auto add_cmd = [&](const std::string& name, const std::string& desc) {
    CLI::App* c = app.add_subcommand(name, desc);
    c->fallthrough();  // allow the global flags after the subcommand name
    c->add_option("file", opt.file, "net file")->required();
    return c;
  };
  add_cmd("validate", "check the six SSP membership conditions");
  add_cmd("semiflows", "print minimal T- and P-semiflows");
  add_cmd("synthesize", "build the control net and run the structural liveness test");
  add_cmd("enforce", "synthesize with liveness enforcement");
  add_cmd("compose", "emit the synchronous composition");
  CLI::App* sim = add_cmd("simulate", "run the supervised system");
  sim->add_option("--policy", opt.policy, "random | script:<file> | exhaustive");
  sim->add_option("--steps", opt.steps, "random policy step count");
  sim->add_option("--script", script_path, "script file (plant transitions)");
  add_cmd("census", "plant / monitors / composed census report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("validate")) return cmd_validate(opt);
    if (app.got_subcommand("semiflows")) return cmd_semiflows(opt);
    if (app.got_subcommand("synthesize")) return cmd_synthesize(opt);
    if (app.got_subcommand("enforce")) return cmd_enforce(opt);
    if (app.got_subcommand("compose")) return cmd_compose(opt);
    if (app.got_subcommand("simulate")) return cmd_simulate(opt, script_path);
    if (app.got_subcommand("census")) return cmd_census(opt);
  } catch (const ssp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ssp::NetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
