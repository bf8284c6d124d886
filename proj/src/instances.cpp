#include "sdd/instances.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace sdd {

namespace {

StandardFormLP lifted_cube_lp(std::size_t d) {
  const auto di = static_cast<Eigen::Index>(d);
  Mat A(di, 2 * di);
  A.leftCols(di) = Mat::Identity(di, di);
  A.rightCols(di) = Mat::Identity(di, di);
  return StandardFormLP(std::move(A), Vec::Ones(di), /*bounded_attested=*/true,
                        /*nondegenerate_hint=*/true);
}

}  // namespace

Vec HypercubeRareTypes::sample(Rng& rng) const {
  return types[sample_type(rng)];
}

std::size_t HypercubeRareTypes::sample_type(Rng& rng) const {
  double u = rng.uniform();
  for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
    if (u < probs[i]) return i;
    u -= probs[i];
  }
  return probs.size() - 1;
}

std::vector<Vec> HypercubeRareTypes::delta_queries() const {
  const auto di = static_cast<Eigen::Index>(d);
  std::vector<Vec> out;
  out.reserve(d_star);
  for (std::size_t i = 0; i < d_star; ++i) {
    Vec q = Vec::Zero(2 * di);
    q[static_cast<Eigen::Index>(i)] = -1.0;
    q[di + static_cast<Eigen::Index>(i)] = 1.0;
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<Vec> HypercubeRareTypes::vertices() const {
  const auto di = static_cast<Eigen::Index>(d);
  require(d <= 20, ErrorCode::TooLarge, "hypercube vertices: d too large");
  std::vector<Vec> out;
  out.reserve(std::size_t{1} << d);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Vec v(2 * di);
    for (Eigen::Index j = 0; j < di; ++j) {
      const bool on = (mask >> j) & 1U;
      v[j] = on ? 1.0 : 0.0;
      v[di + j] = on ? 0.0 : 1.0;
    }
    out.push_back(std::move(v));
  }
  return out;
}

HypercubeRareTypes make_hypercube(std::size_t d_star, std::size_t d,
                                  double epsilon, double slack_eps) {
  require(d_star >= 2 && d >= d_star, ErrorCode::BadParams,
          "make_hypercube: need d >= d_star >= 2");
  require(epsilon > 0.0 && epsilon < 0.25, ErrorCode::BadParams,
          "make_hypercube: epsilon must lie in (0, 1/4)");
  require(slack_eps > 0.0 && slack_eps < 0.1, ErrorCode::BadParams,
          "make_hypercube: bad slack_eps");

  const auto di = static_cast<Eigen::Index>(d);
  Vec mu(di);
  for (Eigen::Index j = 0; j < di; ++j) {
    mu[j] = static_cast<std::size_t>(j) < d_star ? 0.99 : 10.0;
  }

  Vec center = Vec::Zero(2 * di);
  center.head(di) = mu;
  Vec diag = Vec::Ones(2 * di);
  diag.tail(di).setConstant(slack_eps * slack_eps);

  std::vector<Vec> types;
  types.reserve(d_star);
  for (std::size_t i = 0; i < d_star; ++i) {
    Vec c = center;
    c[static_cast<Eigen::Index>(i)] -= 1.0;
    types.push_back(std::move(c));
  }
  std::vector<double> probs(d_star, 0.0);
  probs[0] = 1.0 - 2.0 * epsilon;
  const double rare = 2.0 * epsilon / static_cast<double>(d_star - 1);
  for (std::size_t i = 1; i < d_star; ++i) probs[i] = rare;

  return HypercubeRareTypes{
      d_star,
      d,
      epsilon,
      std::move(mu),
      lifted_cube_lp(d),
      PriorSet::ellipsoid(std::move(center), diag.asDiagonal().toDenseMatrix()),
      std::move(types),
      std::move(probs),
      slack_eps};
}

std::vector<Vec> GridCloInstance::path_vertices() const {
  const Eigen::Index d = lp.cols();
  std::map<std::pair<int, int>, int> arc_index;
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    arc_index[arcs[a]] = static_cast<int>(a);
  }
  std::vector<Vec> out;
  std::vector<int> stack_arcs;
  std::function<void(int, int)> dfs = [&](int i, int j) {
    if (i == g - 1 && j == g - 1) {
      Vec v = Vec::Zero(d);
      for (int a : stack_arcs) v[a] = 1.0;
      out.push_back(std::move(v));
      return;
    }
    if (j + 1 < g) {
      stack_arcs.push_back(arc_index.at({node_id(i, j), node_id(i, j + 1)}));
      dfs(i, j + 1);
      stack_arcs.pop_back();
    }
    if (i + 1 < g) {
      stack_arcs.push_back(arc_index.at({node_id(i, j), node_id(i + 1, j)}));
      dfs(i + 1, j);
      stack_arcs.pop_back();
    }
  };
  dfs(0, 0);
  return out;
}

GridCloInstance make_grid_clo(int g, int p, const std::string& corridor_spec) {
  require(g >= 2, ErrorCode::BadParams, "make_grid_clo: need g >= 2");
  require(p >= 1, ErrorCode::BadParams, "make_grid_clo: need p >= 1");

  std::string steps = corridor_spec;
  if (steps == "staircase" || steps.empty()) {
    steps.clear();
    for (int k = 0; k < g - 1; ++k) steps += "RD";
  }
  require(static_cast<int>(steps.size()) == 2 * (g - 1), ErrorCode::BadCorridor,
          "make_grid_clo: corridor path has wrong length");
  {
    int r = 0, dn = 0;
    for (char ch : steps) {
      if (ch == 'R') ++r;
      else if (ch == 'D') ++dn;
      else fail(ErrorCode::BadCorridor, "make_grid_clo: steps must be R or D");
    }
    require(r == g - 1 && dn == g - 1, ErrorCode::BadCorridor,
            "make_grid_clo: corridor path does not reach the sink");
  }

  // Arc table, row-major by tail node: R arc then D arc.
  std::vector<std::pair<int, int>> arcs;
  std::map<std::pair<int, int>, int> arc_index;
  auto node = [g](int i, int j) { return i * g + j; };
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      if (j + 1 < g) {
        arc_index[{node(i, j), node(i, j + 1)}] = static_cast<int>(arcs.size());
        arcs.push_back({node(i, j), node(i, j + 1)});
      }
      if (i + 1 < g) {
        arc_index[{node(i, j), node(i + 1, j)}] = static_cast<int>(arcs.size());
        arcs.push_back({node(i, j), node(i + 1, j)});
      }
    }
  }
  const auto d = static_cast<Eigen::Index>(arcs.size());

  // Base path nodes.
  std::vector<std::pair<int, int>> path_nodes{{0, 0}};
  for (char ch : steps) {
    auto [i, j] = path_nodes.back();
    path_nodes.push_back(ch == 'R' ? std::make_pair(i, j + 1)
                                   : std::make_pair(i + 1, j));
  }

  std::set<int> corridor;
  for (std::size_t k = 0; k + 1 < path_nodes.size(); ++k) {
    corridor.insert(arc_index.at({node(path_nodes[k].first, path_nodes[k].second),
                                  node(path_nodes[k + 1].first,
                                       path_nodes[k + 1].second)}));
  }
  // Single adjacent-step swaps widen the path into the corridor region.
  for (std::size_t k = 0; k + 2 < path_nodes.size(); ++k) {
    if (steps[k] == steps[k + 1]) continue;
    const auto [ui, uj] = path_nodes[k];
    const auto [wi, wj] = path_nodes[k + 2];
    const int mi = steps[k] == 'R' ? ui + 1 : ui;
    const int mj = steps[k] == 'R' ? uj : uj + 1;
    corridor.insert(arc_index.at({node(ui, uj), node(mi, mj)}));
    corridor.insert(arc_index.at({node(mi, mj), node(wi, wj)}));
  }

  Vec c0(d);
  std::vector<char> is_corridor(arcs.size(), 0);
  std::vector<int> corridor_list(corridor.begin(), corridor.end());
  for (int a : corridor_list) is_corridor[static_cast<std::size_t>(a)] = 1;
  for (Eigen::Index a = 0; a < d; ++a) {
    c0[a] = is_corridor[static_cast<std::size_t>(a)] ? 10.0 : 100.0;
  }

  // Flow conservation rows for every node except the sink (redundant row).
  const int sink = node(g - 1, g - 1);
  const Eigen::Index m = static_cast<Eigen::Index>(g) * g - 1;
  Mat A = Mat::Zero(m, d);
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const auto [tail, head] = arcs[a];
    if (tail != sink) A(tail, static_cast<Eigen::Index>(a)) += 1.0;
    if (head != sink) A(head, static_cast<Eigen::Index>(a)) -= 1.0;
  }
  Vec b = Vec::Zero(m);
  b[0] = 1.0;  // source

  StandardFormLP lp(std::move(A), std::move(b), /*bounded_attested=*/true,
                    /*nondegenerate_hint=*/false);
  return GridCloInstance{g,
                         p,
                         std::move(lp),
                         PriorSet::ellipsoid(c0, Mat::Identity(d, d)),
                         c0,
                         std::move(arcs),
                         std::move(is_corridor),
                         std::move(corridor_list),
                         sink,
                         steps};
}

ThreeSatFormula parse_dimacs(const std::string& text) {
  ThreeSatFormula formula;
  std::istringstream in(text);
  std::string line;
  int declared_clauses = -1;
  std::vector<int> current;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string tag, fmt;
      ls >> tag >> fmt >> formula.n_vars >> declared_clauses;
      require(fmt == "cnf", ErrorCode::Parse, "parse_dimacs: expected 'p cnf'");
      continue;
    }
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        require(!current.empty() && current.size() <= 3, ErrorCode::Parse,
                "parse_dimacs: clauses must have 1..3 literals");
        while (current.size() < 3) current.push_back(current.back());
        formula.clauses.push_back({current[0], current[1], current[2]});
        current.clear();
      } else {
        require(std::abs(lit) <= formula.n_vars && formula.n_vars > 0,
                ErrorCode::Parse, "parse_dimacs: literal out of range");
        current.push_back(lit);
      }
    }
  }
  require(current.empty(), ErrorCode::Parse,
          "parse_dimacs: unterminated clause");
  require(!formula.clauses.empty(), ErrorCode::Parse,
          "parse_dimacs: no clauses");
  return formula;
}

int PisppInstance::vertex(const std::string& name) const {
  for (std::size_t i = 0; i < vertex_names.size(); ++i) {
    if (vertex_names[i] == name) return static_cast<int>(i);
  }
  fail(ErrorCode::InvalidArgument, "PisppInstance: unknown vertex " + name);
}

std::optional<int> PisppInstance::find_arc(const std::string& from,
                                           const std::string& to) const {
  const int u = vertex(from);
  const int v = vertex(to);
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (arcs[a].first == u && arcs[a].second == v) return static_cast<int>(a);
  }
  return std::nullopt;
}

PisppInstance sat_to_pispp(const ThreeSatFormula& formula, double eta) {
  require(formula.n_vars >= 1 && !formula.clauses.empty(), ErrorCode::BadParams,
          "sat_to_pispp: empty formula");
  require(eta > 0.0 && eta < 1.0, ErrorCode::BadParams,
          "sat_to_pispp: eta must lie in (0,1)");
  const int n = formula.n_vars;
  const int m = static_cast<int>(formula.clauses.size());

  PisppInstance inst;
  inst.n_vars = n;
  inst.n_clauses = m;
  inst.eta = eta;
  inst.budget = static_cast<double>(n + 2 * m);

  auto add_vertex = [&inst](const std::string& name) {
    inst.vertex_names.push_back(name);
    return static_cast<int>(inst.vertex_names.size() - 1);
  };
  std::vector<int> s_ids(n + 1), t_ids(m + 1), pos_ids(n + 1), neg_ids(n + 1);
  for (int i = 0; i <= n; ++i) s_ids[i] = add_vertex("s" + std::to_string(i));
  for (int j = 0; j <= m; ++j) t_ids[j] = add_vertex("t" + std::to_string(j));
  for (int i = 1; i <= n; ++i) pos_ids[i] = add_vertex("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) neg_ids[i] = add_vertex("nx" + std::to_string(i));
  std::vector<std::array<int, 3>> b_ids(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) {
    for (int k = 1; k <= 3; ++k) {
      b_ids[j - 1][k - 1] =
          add_vertex("b" + std::to_string(j) + "_" + std::to_string(k));
    }
  }
  inst.source = s_ids[0];
  inst.sink = t_ids[m];

  std::vector<double> lengths;
  auto add_arc = [&](int u, int v, double len, bool shortcut) {
    inst.arcs.push_back({u, v});
    inst.is_shortcut.push_back(shortcut ? 1 : 0);
    lengths.push_back(len);
    return static_cast<int>(inst.arcs.size() - 1);
  };

  for (int i = 1; i <= n; ++i) {
    add_arc(s_ids[i - 1], pos_ids[i], 1.0, false);
    add_arc(pos_ids[i], s_ids[i], 1.0, false);
    add_arc(s_ids[i - 1], neg_ids[i], 1.0, false);
    add_arc(neg_ids[i], s_ids[i], 1.0, false);
  }
  for (int j = 1; j <= m; ++j) {
    for (int k = 1; k <= 3; ++k) {
      add_arc(t_ids[j - 1], b_ids[j - 1][k - 1], 1.0, false);
      add_arc(b_ids[j - 1][k - 1], t_ids[j], 1.0, false);
    }
  }
  inst.required_arc = add_arc(s_ids[n], t_ids[0], 1.0, false);
  for (int j = 1; j <= m; ++j) {
    for (int k = 1; k <= 3; ++k) {
      const int lit = formula.clauses[j - 1][k - 1];
      const int var = std::abs(lit);
      require(var >= 1 && var <= n, ErrorCode::BadParams,
              "sat_to_pispp: literal out of range");
      // shortcut tail: the variable vertex that falsifies the literal
      const int tail = lit > 0 ? neg_ids[var] : pos_ids[var];
      add_arc(tail, b_ids[j - 1][k - 1], 2.0 * (n - var + j), true);
    }
  }

  const auto d = static_cast<Eigen::Index>(inst.arcs.size());
  inst.base_lengths = Vec(d);
  inst.kappa = Vec(d);
  for (Eigen::Index a = 0; a < d; ++a) {
    inst.base_lengths[a] = lengths[static_cast<std::size_t>(a)];
    inst.kappa[a] =
        inst.is_shortcut[static_cast<std::size_t>(a)] ? inst.budget + 1.0 : 1.0;
  }
  return inst;
}

StandardFormLP PisppInstance::flow_lp() const {
  const auto d = static_cast<Eigen::Index>(arcs.size());
  const auto nv = static_cast<Eigen::Index>(vertex_names.size());
  // The sink row is redundant; dropping it leaves full row rank. Rows keep
  // vertex ids, shifted down past the sink.
  Mat A = Mat::Zero(nv - 1, d);
  auto row_of = [this, nv](int v) -> Eigen::Index {
    if (v == sink) return -1;
    return v < sink ? v : v - 1;
  };
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const auto [tail, head] = arcs[a];
    const Eigen::Index rt = row_of(tail);
    const Eigen::Index rh = row_of(head);
    if (rt >= 0) A(rt, static_cast<Eigen::Index>(a)) += 1.0;
    if (rh >= 0) A(rh, static_cast<Eigen::Index>(a)) -= 1.0;
  }
  Vec b = Vec::Zero(nv - 1);
  b[row_of(source)] = 1.0;
  return StandardFormLP(std::move(A), std::move(b), /*bounded_attested=*/true,
                        /*nondegenerate_hint=*/false);
}

PriorSet PisppInstance::closed_prior() const {
  const auto d = static_cast<Eigen::Index>(arcs.size());
  // c >= base_lengths and kappa'(c - base_lengths) <= B
  Mat G(d + 1, d);
  G.topRows(d) = -Mat::Identity(d, d);
  G.row(d) = kappa.transpose();
  Vec h(d + 1);
  h.head(d) = -base_lengths;
  h[d] = budget + kappa.dot(base_lengths);
  return PriorSet::hpolytope(std::move(G), std::move(h));
}

std::size_t PisppInstance::for_each_path(
    const std::function<void(const std::vector<int>&)>& fn) const {
  std::vector<std::vector<int>> out_arcs(vertex_names.size());
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    out_arcs[static_cast<std::size_t>(arcs[a].first)].push_back(
        static_cast<int>(a));
  }
  std::size_t count = 0;
  std::vector<int> path;
  std::function<void(int)> dfs = [&](int v) {
    if (v == sink) {
      ++count;
      fn(path);
      return;
    }
    for (int a : out_arcs[static_cast<std::size_t>(v)]) {
      path.push_back(a);
      dfs(arcs[static_cast<std::size_t>(a)].second);
      path.pop_back();
    }
  };
  dfs(source);
  return count;
}

std::vector<Vec> PisppInstance::path_vertices() const {
  const auto d = static_cast<Eigen::Index>(arcs.size());
  std::vector<Vec> out;
  for_each_path([&](const std::vector<int>& path) {
    Vec v = Vec::Zero(d);
    for (int a : path) v[a] = 1.0;
    out.push_back(std::move(v));
  });
  return out;
}

double PisppInstance::path_length(const std::vector<int>& path,
                                  const Vec& lengths) const {
  double total = 0.0;
  for (int a : path) total += lengths[a];
  return total;
}

namespace {

bool clause_satisfied(const std::array<int, 3>& clause,
                      const std::vector<char>& assignment) {
  for (int lit : clause) {
    const int var = std::abs(lit);
    const bool value = assignment[static_cast<std::size_t>(var)] != 0;
    if ((lit > 0 && value) || (lit < 0 && !value)) return true;
  }
  return false;
}

// DAG shortest-path distances under the given lengths, from every vertex to
// the sink and from the source to every vertex.
struct PisppDistances {
  std::vector<double> from_source;
  std::vector<double> to_sink;
};

PisppDistances pispp_distances(const PisppInstance& inst, const Vec& lengths) {
  const std::size_t nv = inst.vertex_names.size();
  const double inf = std::numeric_limits<double>::infinity();
  // Vertex ids are already in topological order by construction except that
  // shortcut arcs jump from the variable layer into the clause layer, which
  // still goes forward; a relaxation sweep over arcs sorted by tail works.
  std::vector<std::vector<int>> out_arcs(nv), in_arcs(nv);
  for (std::size_t a = 0; a < inst.arcs.size(); ++a) {
    out_arcs[static_cast<std::size_t>(inst.arcs[a].first)].push_back(
        static_cast<int>(a));
    in_arcs[static_cast<std::size_t>(inst.arcs[a].second)].push_back(
        static_cast<int>(a));
  }
  // Topological order via DFS.
  std::vector<int> topo;
  std::vector<char> seen(nv, 0);
  std::function<void(int)> visit = [&](int v) {
    seen[static_cast<std::size_t>(v)] = 1;
    for (int a : out_arcs[static_cast<std::size_t>(v)]) {
      const int w = inst.arcs[static_cast<std::size_t>(a)].second;
      if (!seen[static_cast<std::size_t>(w)]) visit(w);
    }
    topo.push_back(v);
  };
  for (std::size_t v = 0; v < nv; ++v) {
    if (!seen[v]) visit(static_cast<int>(v));
  }
  std::reverse(topo.begin(), topo.end());

  PisppDistances dist;
  dist.from_source.assign(nv, inf);
  dist.to_sink.assign(nv, inf);
  dist.from_source[static_cast<std::size_t>(inst.source)] = 0.0;
  for (int v : topo) {
    const double dv = dist.from_source[static_cast<std::size_t>(v)];
    if (dv == inf) continue;
    for (int a : out_arcs[static_cast<std::size_t>(v)]) {
      const int w = inst.arcs[static_cast<std::size_t>(a)].second;
      dist.from_source[static_cast<std::size_t>(w)] =
          std::min(dist.from_source[static_cast<std::size_t>(w)], dv + lengths[a]);
    }
  }
  dist.to_sink[static_cast<std::size_t>(inst.sink)] = 0.0;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const int v = *it;
    for (int a : out_arcs[static_cast<std::size_t>(v)]) {
      const int w = inst.arcs[static_cast<std::size_t>(a)].second;
      const double dw = dist.to_sink[static_cast<std::size_t>(w)];
      if (dw == inf) continue;
      dist.to_sink[static_cast<std::size_t>(v)] =
          std::min(dist.to_sink[static_cast<std::size_t>(v)], dw + lengths[a]);
    }
  }
  return dist;
}

// Modification vector from the explicit construction: one unit on the entry
// arc of each unchosen variable vertex, one unit on the two non-chosen
// clause exits. chosen[j] is the literal slot picked for clause j.
Vec construct_modification(const PisppInstance& inst,
                           const ThreeSatFormula& formula,
                           const std::vector<char>& assignment,
                           const std::vector<int>& chosen) {
  Vec w = Vec::Zero(inst.base_lengths.size());
  for (int i = 1; i <= inst.n_vars; ++i) {
    const bool value = assignment[static_cast<std::size_t>(i)] != 0;
    const std::string unchosen =
        (value ? "nx" : "x") + std::to_string(i);
    const auto arc = inst.find_arc("s" + std::to_string(i - 1), unchosen);
    w[*arc] += 1.0;
  }
  for (int j = 1; j <= inst.n_clauses; ++j) {
    for (int k = 1; k <= 3; ++k) {
      if (k == chosen[static_cast<std::size_t>(j - 1)]) continue;
      const auto arc =
          inst.find_arc("b" + std::to_string(j) + "_" + std::to_string(k),
                        "t" + std::to_string(j));
      w[*arc] += 1.0;
    }
  }
  (void)formula;
  return w;
}

}  // namespace

bool pispp_brute_check(const PisppInstance& inst,
                       const ThreeSatFormula& formula) {
  require(formula.n_vars <= 12, ErrorCode::TooLarge,
          "pispp_brute_check: too many variables to enumerate");
  const int n = formula.n_vars;

  bool satisfiable = false;
  bool modification_found = false;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<char> assignment(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
      assignment[static_cast<std::size_t>(i)] = (mask >> (i - 1)) & 1U;
    }
    bool all = true;
    std::vector<int> chosen(formula.clauses.size(), 1);
    for (std::size_t j = 0; j < formula.clauses.size(); ++j) {
      if (!clause_satisfied(formula.clauses[j], assignment)) {
        all = false;
        continue;  // chosen stays at the first literal slot
      }
      for (int k = 1; k <= 3; ++k) {
        const int lit = formula.clauses[j][static_cast<std::size_t>(k - 1)];
        const bool value = assignment[static_cast<std::size_t>(std::abs(lit))] != 0;
        if ((lit > 0 && value) || (lit < 0 && !value)) {
          chosen[j] = k;
          break;
        }
      }
    }
    satisfiable = satisfiable || all;

    const Vec w = construct_modification(inst, formula, assignment, chosen);
    require(inst.kappa.dot(w) <= inst.budget + 1e-9, ErrorCode::Internal,
            "pispp_brute_check: constructed modification exceeds the budget");
    const Vec lengths = inst.base_lengths + w;
    const PisppDistances dist = pispp_distances(inst, lengths);
    const double best =
        dist.from_source[static_cast<std::size_t>(inst.sink)];
    const auto [rt, rh] = inst.arcs[static_cast<std::size_t>(inst.required_arc)];
    const double via_r = dist.from_source[static_cast<std::size_t>(rt)] +
                         lengths[inst.required_arc] +
                         dist.to_sink[static_cast<std::size_t>(rh)];
    if (via_r <= best + 1e-9) modification_found = true;
  }
  return satisfiable == modification_found;
}

FacetHitExample make_facet_hit_example(double eps) {
  require(eps > 0.0 && eps < 1.0, ErrorCode::BadParams,
          "make_facet_hit_example: eps must lie in (0,1)");
  Vec p0(4), p1(4);
  p0 << 1.0, eps, 0.0, 0.0;
  p1 << -1.0, -1.0, 0.0, 0.0;
  const Vec u = p1 - p0;

  // The segment as a flat H-polytope: three orthogonal equality pairs plus
  // the two endpoint bounds along the segment direction.
  Vec w1(4);
  w1 << -u[1], u[0], 0.0, 0.0;
  Mat G(8, 4);
  Vec h(8);
  auto put_eq = [&](Eigen::Index row, const Vec& normal, double value) {
    G.row(row) = normal.transpose();
    h[row] = value;
    G.row(row + 1) = -normal.transpose();
    h[row + 1] = -value;
  };
  put_eq(0, w1, w1.dot(p0));
  put_eq(2, Vec::Unit(4, 2), 0.0);
  put_eq(4, Vec::Unit(4, 3), 0.0);
  G.row(6) = u.transpose();
  h[6] = std::max(u.dot(p0), u.dot(p1));
  G.row(7) = -u.transpose();
  h[7] = -std::min(u.dot(p0), u.dot(p1));

  return FacetHitExample{lifted_cube_lp(2),
                         PriorSet::hpolytope(std::move(G), std::move(h)), p0,
                         p1, eps};
}

StandardFormLP make_random_lp(Eigen::Index m, Eigen::Index d, Rng& rng) {
  require(m >= 1 && d > m, ErrorCode::BadParams,
          "make_random_lp: need d > m >= 1");
  const Eigen::Index k = d - m;  // structural variables
  Mat A = Mat::Zero(m, d);
  Vec b(m);
  A.block(0, 0, 1, k).setOnes();
  A(0, k) = 1.0;
  b[0] = 1.0;
  for (Eigen::Index i = 1; i < m; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) A(i, j) = rng.uniform();
    A(i, k + i) = 1.0;
    b[i] = rng.uniform(0.5, 1.5);
  }
  return StandardFormLP(std::move(A), std::move(b), /*bounded_attested=*/true,
                        /*nondegenerate_hint=*/true);
}

}  // namespace sdd
