#include "slicing/oracle.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace slicing {

namespace {

struct Space {
  std::vector<std::vector<std::size_t>> bs_users;
  std::vector<double> levels;
  std::vector<VmRef> vms;
  std::vector<std::size_t> options;  // per (BS, subchannel): idle + users * levels
};

void check_bounds(const Scenario& sc, const OracleOptions& opt) {
  const auto fail = [](const std::string& what) { throw std::invalid_argument("oracle: instance too large (" + what + ")"); };
  if (sc.radio.bs_count() > 2) fail("more than 2 base stations");
  if (sc.user_count() > 3) fail("more than 3 users");
  if (sc.radio.subchannels > 3) fail("more than 3 subchannels");
  if (opt.power_levels == 0 || opt.power_levels > 4) fail("power levels outside 1..4");
  if (sc.core.graph.node_count() > 4) fail("more than 4 nodes");
  for (const auto& n : sc.core.nodes)
    if (n.vm_count > 2) fail("more than 2 VMs on a node");
  for (const auto& c : sc.core.chains)
    if (c.size() > 2) fail("chain longer than 2");
}

Space build_space(const Scenario& sc, const OracleOptions& opt) {
  Space s;
  s.bs_users.resize(sc.radio.bs_count());
  for (std::size_t u = 0; u < sc.user_count(); ++u) s.bs_users[sc.radio.user_bs[u]].push_back(u);
  s.levels = oracle_power_levels(sc, opt.power_levels);
  for (NodeId n = 0; n < sc.core.graph.node_count(); ++n)
    for (std::size_t v = 0; v < sc.core.nodes[n].vm_count; ++v) s.vms.push_back(VmRef{n, v});
  for (std::size_t i = 0; i < sc.radio.bs_count(); ++i)
    for (std::size_t k = 0; k < sc.radio.subchannels; ++k)
      s.options.push_back(1 + s.bs_users[i].size() * s.levels.size());
  return s;
}

// (placement, routing) pairs for one chain: sum over VM sequences of the
// product of candidate path counts between consecutive functions.
std::uint64_t embeddings(const Scenario& sc, const Space& s, std::size_t chain_len) {
  if (chain_len == 0) return 1;
  std::vector<std::uint64_t> ending(s.vms.size(), 1);
  for (std::size_t j = 1; j < chain_len; ++j) {
    std::vector<std::uint64_t> next(s.vms.size(), 0);
    for (std::size_t a = 0; a < s.vms.size(); ++a)
      for (std::size_t b = 0; b < s.vms.size(); ++b)
        next[b] += ending[a] * sc.core.paths.paths(s.vms[a].node, s.vms[b].node).size();
    ending = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto e : ending) total += e;
  return total;
}

// Odometer step, last digit fastest so the sequence is lexicographic.
bool advance(std::vector<std::size_t>& digits, const std::vector<std::size_t>& radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

RadioAllocation decode_radio(const Scenario& sc, const Space& s, const std::vector<std::size_t>& digits) {
  RadioAllocation r(sc.radio.bs_count(), sc.radio.subchannels);
  for (std::size_t c = 0; c < digits.size(); ++c) {
    if (digits[c] == 0) continue;
    const std::size_t i = c / sc.radio.subchannels, k = c % sc.radio.subchannels;
    const std::size_t o = digits[c] - 1;
    r.user_at(i, k) = s.bs_users[i][o / s.levels.size()];
    r.power(i, k) = s.levels[o % s.levels.size()];
  }
  return r;
}

class Search {
 public:
  Search(const Scenario& sc, const ChannelState& ch, const std::vector<double>& w, const Space& s,
         const OracleVisitor& visit, OracleResult& out)
      : sc_(sc), ch_(ch), w_(w), s_(s), visit_(visit), out_(out) {}

  void run(Allocation& a, const std::vector<std::size_t>& served, std::size_t idx) {
    if (idx == served.size()) {
      leaf(a);
      return;
    }
    const std::size_t u = served[idx];
    const std::size_t len = sc_.core.chains[sc_.radio.user_slice[u]].size();
    std::vector<std::size_t> place(len, 0);
    const std::vector<std::size_t> vm_radix(len, s_.vms.size());
    do {
      auto& row = a.placement.vnf[u];
      row.clear();
      for (std::size_t j : place) row.push_back(s_.vms[j]);
      std::vector<std::size_t> route(len > 0 ? len - 1 : 0, 0), route_radix;
      for (std::size_t j = 0; j + 1 < len; ++j)
        route_radix.push_back(sc_.core.paths.paths(row[j].node, row[j + 1].node).size());
      do {
        a.routing.path[u] = route;
        run(a, served, idx + 1);
      } while (advance(route, route_radix));
    } while (advance(place, vm_radix));
    a.placement.vnf[u].clear();
    a.routing.path[u].clear();
  }

 private:
  void leaf(const Allocation& a) {
    ++out_.visited;
    const Evaluation ev = evaluate(sc_, a, ch_, w_);
    if (visit_) visit_(a, ev);
    if (!ev.violations.feasible()) return;
    ++out_.feasible;
    if (!out_.any_feasible || ev.utility.total > out_.utility) {
      out_.any_feasible = true;
      out_.utility = ev.utility.total;
      out_.best = a;
    }
  }

  const Scenario& sc_;
  const ChannelState& ch_;
  const std::vector<double>& w_;
  const Space& s_;
  const OracleVisitor& visit_;
  OracleResult& out_;
};

}  // namespace

std::vector<double> oracle_power_levels(const Scenario& sc, std::size_t levels) {
  const double top = sc.radio.p_max_w / double(sc.radio.subchannels);
  if (levels == 1) return {top};
  std::vector<double> out;
  for (std::size_t j = 0; j < levels; ++j) out.push_back(top * double(j) / double(levels - 1));
  return out;
}

std::uint64_t oracle_search_size(const Scenario& sc, const OracleOptions& opt) {
  check_bounds(sc, opt);
  const Space s = build_space(sc, opt);
  std::vector<std::uint64_t> per_user(sc.user_count());
  for (std::size_t u = 0; u < sc.user_count(); ++u)
    per_user[u] = embeddings(sc, s, sc.core.chains[sc.radio.user_slice[u]].size());

  std::uint64_t total = 0;
  std::vector<std::size_t> digits(s.options.size(), 0);
  do {
    const RadioAllocation r = decode_radio(sc, s, digits);
    std::uint64_t n = 1;
    for (std::size_t u = 0; u < sc.user_count(); ++u)
      if (r.serves(u)) n *= per_user[u];
    total += n;
    if (total > opt.max_combinations)
      throw std::invalid_argument("oracle: search space exceeds " + std::to_string(opt.max_combinations));
  } while (advance(digits, s.options));
  return total;
}

OracleResult enumerate_optimal(const Scenario& sc, const ChannelState& ch, const std::vector<double>& w,
                               const OracleOptions& opt, const OracleVisitor& visit) {
  oracle_search_size(sc, opt);
  const Space s = build_space(sc, opt);
  OracleResult out;
  Search search(sc, ch, w, s, visit, out);
  std::vector<std::size_t> digits(s.options.size(), 0);
  do {
    Allocation a = empty_allocation(sc);
    a.radio = decode_radio(sc, s, digits);
    std::vector<std::size_t> served;
    for (std::size_t u = 0; u < sc.user_count(); ++u)
      if (a.radio.serves(u)) served.push_back(u);
    search.run(a, served, 0);
  } while (advance(digits, s.options));

  if (!out.any_feasible) {
    out.best = empty_allocation(sc);
    out.utility = evaluate(sc, out.best, ch, w).utility.total;
  }
  return out;
}

TinyInstance load_tiny(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw std::runtime_error(std::string("tiny instance: ") + e.what());
  }
  TinyInstance t;
  if (auto inst = tree.get_child_optional("instance")) {
    t.seed = inst->get<std::uint64_t>("seed", t.seed);
    t.power_levels = inst->get<std::size_t>("power_levels", t.power_levels);
    tree.erase("instance");
  }
  std::stringstream rest;
  boost::property_tree::ini_parser::write_ini(rest, tree);
  t.config = parse_config(rest);
  auto& g = t.config.scenario.graph;
  if (g != "abilene" && std::filesystem::path(g).is_relative()) g = (file.parent_path() / g).string();
  return t;
}

}  // namespace slicing
