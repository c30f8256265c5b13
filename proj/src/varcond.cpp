// Copyright 2026 The epsk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "varcond.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace epsk {

VarCond::VarCond(EdgeSet p, EdgeSet n) : p_(std::move(p)), n_(std::move(n)) {
  for (const Edge& e : p_)
    if (!e.first.is_free() || !e.second.is_var())
      throw Error(ErrorKind::IllFormed,
                  "P edge " + e.first.str() + " -> " + e.second.str() +
                      " must end in a free variable");
  for (const Edge& e : n_)
    if (!e.first.is_var() || !e.second.is_atom())
      throw Error(ErrorKind::IllFormed,
                  "N edge " + e.first.str() + " -> " + e.second.str() +
                      " must run from a free variable to a free atom");
}

VarCond VarCond::with_positive(const EdgeSet& add) const {
  EdgeSet p = p_;
  p.insert(add.begin(), add.end());
  return VarCond(std::move(p), n_);
}

VarCond VarCond::with_negative(const EdgeSet& add) const {
  EdgeSet n = n_;
  n.insert(add.begin(), add.end());
  return VarCond(p_, std::move(n));
}

SymbolSet VarCond::nodes() const {
  SymbolSet s;
  for (const Edge& e : p_) {
    s.insert(e.first);
    s.insert(e.second);
  }
  for (const Edge& e : n_) {
    s.insert(e.first);
    s.insert(e.second);
  }
  return s;
}

std::string Violation::describe() const {
  std::string out;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    if (k) {
      bool is_n = n_edge && cycle[k - 1] == n_edge->first && cycle[k] == n_edge->second;
      out += is_n ? " -N-> " : " -P-> ";
    }
    out += cycle[k].str();
  }
  if (n_edge) return "cycle " + out + " has exactly one N edge";
  return "P cycle " + out;
}

namespace {

struct Graph {
  std::vector<Symbol> nodes;
  std::map<Symbol, int> index;
  std::vector<std::vector<int>> succ;

  int id(const Symbol& s) {
    auto [it, inserted] = index.emplace(s, static_cast<int>(nodes.size()));
    if (inserted) {
      nodes.push_back(s);
      succ.emplace_back();
    }
    return it->second;
  }

  explicit Graph(const EdgeSet& r) {
    for (const Edge& e : r) {
      int a = id(e.first);
      int b = id(e.second);
      succ[a].push_back(b);
    }
  }
};

std::optional<std::vector<Symbol>> find_cycle(const Graph& g) {
  const int n = static_cast<int>(g.nodes.size());
  std::vector<int> color(n, 0), parent(n, -1);
  for (int root = 0; root < n; ++root) {
    if (color[root]) continue;
    // iterative DFS with explicit successor cursor
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next < g.succ[u].size()) {
        int v = g.succ[u][next++];
        if (color[v] == 0) {
          color[v] = 1;
          parent[v] = u;
          stack.push_back({v, 0});
        } else if (color[v] == 1) {
          std::vector<Symbol> cyc{g.nodes[v]};
          std::vector<int> back;
          for (int w = u; w != v; w = parent[w]) back.push_back(w);
          for (auto it = back.rbegin(); it != back.rend(); ++it) cyc.push_back(g.nodes[*it]);
          cyc.push_back(g.nodes[v]);
          return cyc;
        }
      } else {
        color[u] = 2;
        stack.pop_back();
      }
    }
  }
  return std::nullopt;
}

// Path from `from` to `to` (one or more steps) over g, or nullopt.
std::optional<std::vector<Symbol>> find_path(const Graph& g, const Symbol& from,
                                             const Symbol& to) {
  auto fi = g.index.find(from);
  auto ti = g.index.find(to);
  if (fi == g.index.end() || ti == g.index.end()) return std::nullopt;
  const int n = static_cast<int>(g.nodes.size());
  std::vector<int> parent(n, -2);
  std::deque<int> q;
  for (int v : g.succ[fi->second]) {
    if (parent[v] == -2) {
      parent[v] = fi->second;
      q.push_back(v);
    }
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    if (u == ti->second) {
      std::vector<Symbol> path;
      int w = u;
      do {
        path.push_back(g.nodes[w]);
        w = parent[w];
      } while (w != fi->second);
      path.push_back(g.nodes[fi->second]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int v : g.succ[u]) {
      if (parent[v] == -2) {
        parent[v] = u;
        q.push_back(v);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> find_violation(const VarCond& vc) {
  Graph g(vc.positive());
  if (auto cyc = find_cycle(g)) return Violation{*cyc, std::nullopt};
  for (const Edge& ne : vc.negative()) {
    if (auto path = find_path(g, ne.second, ne.first)) {
      std::vector<Symbol> cyc{ne.first};
      cyc.insert(cyc.end(), path->begin(), path->end());
      return Violation{cyc, ne};
    }
  }
  return std::nullopt;
}

bool is_consistent(const VarCond& vc) { return !find_violation(vc).has_value(); }

EdgeSet dependence(const Substitution& s) {
  EdgeSet d;
  for (const auto& [x, t] : s.bindings()) {
    if (!x.is_var()) continue;
    for (const Symbol& z : t.free())
      if (z.is_free()) d.emplace(z, x);
  }
  return d;
}

VarCond sigma_update(const VarCond& vc, const Substitution& s) {
  if (!s.empty() && !s.over_vars())
    throw Error(ErrorKind::Substitution, "sigma-update needs a substitution on free variables");
  return vc.with_positive(dependence(s));
}

bool is_pn_substitution(const VarCond& vc, const Substitution& s) {
  return is_consistent(sigma_update(vc, s));
}

EdgeSet transitive_closure(const EdgeSet& r) {
  Graph g(r);
  EdgeSet out;
  const int n = static_cast<int>(g.nodes.size());
  for (int s = 0; s < n; ++s) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack(g.succ[s].begin(), g.succ[s].end());
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      if (seen[u]) continue;
      seen[u] = 1;
      out.emplace(g.nodes[s], g.nodes[u]);
      for (int v : g.succ[u]) stack.push_back(v);
    }
  }
  return out;
}

SymbolSet reaching(const EdgeSet& r, const SymbolSet& targets) {
  std::map<Symbol, std::vector<Symbol>> pred;
  for (const Edge& e : r) pred[e.second].push_back(e.first);
  SymbolSet out;
  std::vector<Symbol> stack(targets.begin(), targets.end());
  while (!stack.empty()) {
    Symbol u = stack.back();
    stack.pop_back();
    if (!out.insert(u).second) continue;
    auto it = pred.find(u);
    if (it != pred.end())
      for (const Symbol& p : it->second) stack.push_back(p);
  }
  return out;
}

SymbolSet reachable_plus(const EdgeSet& r, const SymbolSet& sources) {
  std::map<Symbol, std::vector<Symbol>> succ;
  for (const Edge& e : r) succ[e.first].push_back(e.second);
  SymbolSet out;
  std::vector<Symbol> stack;
  for (const Symbol& s : sources) {
    auto it = succ.find(s);
    if (it != succ.end()) stack.insert(stack.end(), it->second.begin(), it->second.end());
  }
  while (!stack.empty()) {
    Symbol u = stack.back();
    stack.pop_back();
    if (!out.insert(u).second) continue;
    auto it = succ.find(u);
    if (it != succ.end()) stack.insert(stack.end(), it->second.begin(), it->second.end());
  }
  return out;
}

bool is_weak_extension(const VarCond& base, const VarCond& ext) {
  if (!std::includes(ext.negative().begin(), ext.negative().end(),
                     base.negative().begin(), base.negative().end()))
    return false;
  EdgeSet closure = transitive_closure(ext.positive());
  return std::includes(closure.begin(), closure.end(), base.positive().begin(),
                       base.positive().end());
}

namespace {
std::string dot_id(const Symbol& s) { return "\"" + s.str() + "\""; }
}  // namespace

std::string to_dot(const VarCond& vc) {
  std::ostringstream out;
  out << "digraph vc {\n";
  for (const Symbol& s : vc.nodes())
    out << "  " << dot_id(s) << (s.is_atom() ? " [shape=box];\n" : " [shape=ellipse];\n");
  for (const Edge& e : vc.positive())
    out << "  " << dot_id(e.first) << " -> " << dot_id(e.second) << ";\n";
  for (const Edge& e : vc.negative())
    out << "  " << dot_id(e.first) << " -> " << dot_id(e.second) << " [style=dashed];\n";
  out << "}\n";
  return out.str();
}

namespace {
Symbol read_node(const std::string& tok, int line) {
  if (tok.size() < 2 || (tok[0] != '?' && tok[0] != '!'))
    throw SyntaxError(line, 1, "expected ?var or !atom, found '" + tok + "'");
  std::string name = tok.substr(1);
  return tok[0] == '?' ? Symbol::var(name) : Symbol::atom(name);
}
}  // namespace

VarCond parse_varcond(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  EdgeSet p, n;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string kind, a, b, extra;
    if (!(ls >> kind)) continue;
    if (!(ls >> a >> b) || (ls >> extra))
      throw SyntaxError(line, 1, "expected '<P|N> <from> <to>'");
    Edge e{read_node(a, line), read_node(b, line)};
    if (kind == "P")
      p.insert(e);
    else if (kind == "N")
      n.insert(e);
    else
      throw SyntaxError(line, 1, "edge kind must be P or N");
  }
  return VarCond(std::move(p), std::move(n));
}

std::string format_varcond(const VarCond& vc) {
  std::string out;
  for (const Edge& e : vc.positive()) out += "P " + e.first.str() + " " + e.second.str() + "\n";
  for (const Edge& e : vc.negative()) out += "N " + e.first.str() + " " + e.second.str() + "\n";
  return out;
}

}  // namespace epsk
