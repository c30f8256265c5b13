// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Reports go to stdout as JSON, diagnostics to
// stderr. Exit codes: 0 ok, 1 refuted/inconsistent/open, 2 input error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "epsk/epsk.h"

namespace {

struct SigDeleter {
  void operator()(epsk_signature* s) const { epsk_signature_free(s); }
};
using SigPtr = std::unique_ptr<epsk_signature, SigDeleter>;

struct InputError {
  std::string msg;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string signature;
  std::string formula;
  std::string file;
  std::string script;
  std::string cc;
  std::string vc;
  std::string structures;
  std::string positional;
  std::string eps_mode = "shared";
  int max_universe = 0;
  bool emit_dot = false;
  bool parallel = false;
  bool with_formula = false;
};

SigPtr load_signature(const Options& o) {
  if (o.signature.empty()) return SigPtr(epsk_signature_new());
  epsk_signature* s = nullptr;
  if (epsk_signature_parse(slurp(o.signature).c_str(), &s) != EPSK_OK)
    throw InputError{std::string("signature: ") + epsk_last_error()};
  return SigPtr(s);
}

std::optional<std::string> formulas(const Options& o) {
  if (!o.formula.empty()) return o.formula;
  if (!o.file.empty()) return slurp(o.file);
  return std::nullopt;
}

int finish(epsk_status st, char*& json) {
  if (json) {
    std::cout << json << "\n";
    epsk_string_free(json);
    json = nullptr;
  }
  if (st != EPSK_OK && *epsk_last_error()) std::cerr << "epsk: " << epsk_last_error() << "\n";
  return static_cast<int>(st);
}

epsk_eps_mode mode_of(const Options& o) {
  return o.eps_mode == "fresh" ? EPSK_EPS_FRESH : EPSK_EPS_SHARED;
}

int run(const std::string& cmd, const Options& o) {
  char* out = nullptr;
  if (cmd == "vc-check") {
    std::string path = !o.positional.empty() ? o.positional : o.vc;
    if (path.empty()) throw InputError{"vc-check needs a .vc file"};
    epsk_status st = epsk_vc_check(slurp(path).c_str(), o.emit_dot, &out);
    return finish(st, out);
  }
  SigPtr sig = load_signature(o);
  auto fs = formulas(o);
  if (cmd == "check") {
    std::string path = !o.script.empty() ? o.script : o.positional;
    if (path.empty()) throw InputError{"check needs a proof script"};
    std::string script = slurp(path);
    epsk_status st =
        epsk_check(sig.get(), fs ? fs->c_str() : nullptr, script.c_str(), mode_of(o), &out);
    return finish(st, out);
  }
  if (!fs) throw InputError{cmd + " needs --formula or --file"};
  if (cmd == "eliminate") {
    epsk_status st = epsk_eliminate(sig.get(), fs->c_str(), mode_of(o), &out);
    return finish(st, out);
  }
  if (cmd == "reconstruct") {
    if (o.cc.empty()) throw InputError{"reconstruct needs --cc"};
    epsk_status st = epsk_reconstruct(sig.get(), fs->c_str(), slurp(o.cc).c_str(), &out);
    return finish(st, out);
  }
  if (cmd == "qelim") {
    epsk_status st = epsk_qelim(sig.get(), fs->c_str(), o.parallel, o.with_formula, &out);
    return finish(st, out);
  }
  if (cmd == "validity") {
    if (o.structures.empty()) throw InputError{"validity needs --structures"};
    std::string vc = o.vc.empty() ? std::string() : slurp(o.vc);
    std::string cc = o.cc.empty() ? std::string() : slurp(o.cc);
    epsk_status st = epsk_validity(sig.get(), fs->c_str(), slurp(o.structures).c_str(),
                                   o.vc.empty() ? nullptr : vc.c_str(),
                                   o.cc.empty() ? nullptr : cc.c_str(), o.max_universe, &out);
    return finish(st, out);
  }
  throw InputError{"unknown command " + cmd};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"epsk: free variables, free atoms and choice conditions"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--signature", o.signature, "signature file (default: open)");
    auto* f = c->add_option("--formula", o.formula, "formula text, one per line");
    c->add_option("--file", o.file, "file with one formula per line")->excludes(f);
    c->add_option("--eps-mode", o.eps_mode, "eps elimination: shared or fresh")
        ->check(CLI::IsMember({"shared", "fresh"}));
  };

  auto* check = app.add_subcommand("check", "replay a proof script");
  common(check);
  check->add_option("path", o.positional, "proof script");
  check->add_option("--script", o.script, "proof script");

  auto* elim = app.add_subcommand("eliminate", "replace eps terms by choice variables");
  common(elim);

  auto* rec = app.add_subcommand("reconstruct", "expand choice variables into eps terms");
  common(rec);
  rec->add_option("--cc", o.cc, "choice condition file")->required();

  auto* qe = app.add_subcommand("qelim", "eliminate quantifiers into eps terms");
  common(qe);
  qe->add_flag("--parallel", o.parallel, "remove homogeneous blocks at once");
  qe->add_flag("--with-formula", o.with_formula, "include the resulting formula");

  auto* val = app.add_subcommand("validity", "check goals in finite structures");
  common(val);
  val->add_option("--structures", o.structures, "JSON structure file")->required();
  val->add_option("--vc", o.vc, "variable condition file");
  val->add_option("--cc", o.cc, "choice condition file");
  val->add_option("--max-universe", o.max_universe, "largest universe to accept");

  auto* vcc = app.add_subcommand("vc-check", "check a variable condition for consistency");
  vcc->add_option("path", o.positional, ".vc file");
  vcc->add_option("--vc", o.vc, ".vc file");
  vcc->add_flag("--emit-dot", o.emit_dot, "include a Graphviz rendering");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    return run(app.get_subcommands().front()->get_name(), o);
  } catch (const InputError& e) {
    std::cerr << "epsk: " << e.msg << "\n";
    return 2;
  }
}
