#include "mcprune/mce.hpp"

#include <algorithm>
#include <bit>
#include <iterator>

#include "mcprune/errors.hpp"

namespace mcprune {

namespace {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool none() const {
    for (auto w : words_) {
      if (w) return false;
    }
    return true;
  }

  /// Index of the lowest set bit, or npos.
  std::size_t first() const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    }
    return npos;
  }

  void and_with(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  }
  void and_not(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::uint64_t> words_;
};

using Clock = std::chrono::steady_clock;

class Search {
 public:
  Search(const Graph& g, std::optional<Seconds> limit) : g_(g), start_(Clock::now()) {
    if (limit) deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(*limit);
  }

  MceResult run() {
    const std::size_t n = g_.num_vertices();
    MceResult res;
    if (n == 0) {
      res.cliques.emplace_back();
      res.elapsed = Clock::now() - start_;
      return res;
    }

    auto cores = core_decomposition(g_);
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[cores.order[i]] = i;
    best_ = greedy_lower_bound(cores);

    std::vector<Vertex> cand;
    for (std::size_t i = 0; i < n; ++i) {
      const Vertex v = cores.order[i];
      cand.clear();
      for (Vertex u : g_.neighbors(v)) {
        if (pos[u] > i) cand.push_back(u);
      }
      if (cand.size() + 1 < best_) continue;
      solve_from(v, cand);
    }

    for (auto& c : found_) std::sort(c.begin(), c.end());
    std::sort(found_.begin(), found_.end());
    res.omega = best_;
    res.cliques = std::move(found_);
    res.nodes_explored = nodes_;
    res.elapsed = Clock::now() - start_;
    return res;
  }

 private:
  // Greedy clique from the highest-core vertices; only seeds the bound.
  std::size_t greedy_lower_bound(const CoreDecomposition& cores) const {
    const std::size_t n = g_.num_vertices();
    std::size_t best = 1;
    const std::size_t starts = std::min<std::size_t>(n, 16);
    std::vector<Vertex> cands, next;
    for (std::size_t s = 0; s < starts; ++s) {
      const Vertex v = cores.order[n - 1 - s];
      if (cores.core[v] + 1 <= best) continue;
      auto nv = g_.neighbors(v);
      cands.assign(nv.begin(), nv.end());
      std::size_t size = 1;
      while (!cands.empty()) {
        Vertex pick = cands.front();
        std::size_t pick_deg = 0;
        for (Vertex u : cands) {
          auto nu = g_.neighbors(u);
          next.clear();
          std::set_intersection(cands.begin(), cands.end(), nu.begin(), nu.end(), std::back_inserter(next));
          if (next.size() > pick_deg) {
            pick = u;
            pick_deg = next.size();
          }
        }
        auto np = g_.neighbors(pick);
        next.clear();
        std::set_intersection(cands.begin(), cands.end(), np.begin(), np.end(), std::back_inserter(next));
        cands.swap(next);
        ++size;
      }
      best = std::max(best, size);
    }
    return best;
  }

  void solve_from(Vertex root, const std::vector<Vertex>& cand) {
    clique_.assign(1, root);
    if (cand.empty()) {
      record();
      return;
    }
    // Local order: degree inside the candidate set, descending.
    const std::size_t s = cand.size();
    std::vector<std::size_t> local_deg(s, 0);
    for (std::size_t i = 0; i < s; ++i) {
      auto nu = g_.neighbors(cand[i]);
      std::vector<Vertex> tmp;
      std::set_intersection(cand.begin(), cand.end(), nu.begin(), nu.end(), std::back_inserter(tmp));
      local_deg[i] = tmp.size();
    }
    std::vector<std::size_t> perm(s);
    for (std::size_t i = 0; i < s; ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return local_deg[a] > local_deg[b]; });
    local_.resize(s);
    for (std::size_t i = 0; i < s; ++i) local_[i] = cand[perm[i]];

    adj_.assign(s, Bitset(s));
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = i + 1; j < s; ++j) {
        if (g_.has_edge(local_[i], local_[j])) {
          adj_[i].set(j);
          adj_[j].set(i);
        }
      }
    }
    Bitset all(s);
    for (std::size_t i = 0; i < s; ++i) all.set(i);
    expand(all);
  }

  void expand(Bitset p) {
    ++nodes_;
    if ((nodes_ & 1023) == 0 && deadline_ && Clock::now() > *deadline_) throw TimeoutError(best_);

    // Sequential greedy coloring of P; only vertices whose color can still
    // reach the best size are branched on.
    const std::size_t depth = clique_.size();
    const std::size_t kmin = best_ > depth ? best_ - depth : 1;
    std::vector<std::pair<std::size_t, std::size_t>> order;  // (local vertex, color)
    Bitset uncolored = p;
    for (std::size_t color = 1; !uncolored.none(); ++color) {
      Bitset q = uncolored;
      for (std::size_t i = q.first(); i != Bitset::npos; i = q.first()) {
        uncolored.reset(i);
        q.reset(i);
        q.and_not(adj_[i]);
        if (color >= kmin) order.emplace_back(i, color);
      }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      auto [i, color] = *it;
      if (clique_.size() + color < best_) return;
      clique_.push_back(local_[i]);
      Bitset next = p;
      next.and_with(adj_[i]);
      if (next.none()) {
        record();
      } else {
        expand(next);
      }
      clique_.pop_back();
      p.reset(i);
    }
  }

  void record() {
    if (clique_.size() < best_) return;
    if (clique_.size() > best_) {
      best_ = clique_.size();
      found_.clear();
    }
    found_.push_back(clique_);
  }

  const Graph& g_;
  Clock::time_point start_;
  std::optional<Clock::time_point> deadline_;
  std::size_t best_ = 0;
  std::uint64_t nodes_ = 0;
  std::vector<Vertex> clique_;
  std::vector<Vertex> local_;
  std::vector<Bitset> adj_;
  std::vector<std::vector<Vertex>> found_;
};

}  // namespace

std::vector<Vertex> MceResult::clique_vertices() const {
  std::vector<Vertex> out;
  for (const auto& c : cliques) out.insert(out.end(), c.begin(), c.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MceResult enumerate_maximum_cliques(const Graph& g, std::optional<Seconds> time_limit) {
  return Search(g, time_limit).run();
}

Graph omega_oracle_prune(const Graph& g, std::size_t omega) {
  if (omega < 1) throw ArgumentError("omega must be at least 1");
  return k_core_prune(g, omega - 1);
}

bool is_clique(const Graph& g, std::span<const Vertex> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= g.num_vertices()) return false;
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!g.has_edge(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

}  // namespace mcprune
