#include "brainheart/ml/tree.hpp"

#include <algorithm>
#include <numeric>

#include "brainheart/util/random.hpp"

namespace bh::ml {

namespace {

// Gains at or below this are treated as no improvement.
constexpr double kMinGain = 1e-12;

struct Candidate {
  double gain = kMinGain;
  int feature = -1;
  double threshold = 0.0;
};

// Level-wise exact greedy growth over presorted columns. Every frontier node
// is scanned in a single pass per feature. Features are visited in increasing
// index and thresholds in increasing value, and only a strictly larger gain
// replaces the incumbent, so ties go to the lowest feature, then threshold.
//
// Policy supplies:
//   Stats                       per-node sufficient statistics
//   Stats empty()
//   void add(Stats&, row)
//   bool splittable(const Stats&, depth)
//   bool admissible(const Stats& parent, const Stats& left)
//   double gain(const Stats& parent, const Stats& left)
//   void leaf(const Stats&, std::vector<double>& values)
//   bool feature_allowed(frontier slot, feature)
//   void begin_level(frontier size)     draws per-node feature subsets
template <class Policy>
Tree grow(const Matrix& x, const SortedColumns& cols, Policy& policy, int n_outputs, std::vector<int>* leaf_of_row) {
  using Stats = typename Policy::Stats;
  const std::size_t n = x.rows;
  const std::size_t d = x.cols;
  Tree tree;
  tree.n_outputs = n_outputs;
  tree.nodes.emplace_back();

  std::vector<int> slot(n, 0);     // frontier slot of each row, -1 once settled
  std::vector<int> frontier{0};    // node id per slot
  std::vector<int> node_of_row(n, 0);
  for (int depth = 0; !frontier.empty(); ++depth) {
    const std::size_t m = frontier.size();
    std::vector<Stats> total(m, policy.empty());
    for (std::size_t r = 0; r < n; ++r) {
      if (slot[r] >= 0) policy.add(total[static_cast<std::size_t>(slot[r])], r);
    }
    std::vector<char> open(m);
    bool any_open = false;
    for (std::size_t s = 0; s < m; ++s) {
      open[s] = policy.splittable(total[s], depth);
      any_open = any_open || open[s];
    }
    std::vector<Candidate> best(m);
    if (any_open) {
      policy.begin_level(m);
      std::vector<Stats> left(m, policy.empty());
      std::vector<double> last(m);
      std::vector<char> seen(m);
      for (std::size_t f = 0; f < d; ++f) {
        std::vector<char> active(m);
        bool any = false;
        for (std::size_t s = 0; s < m; ++s) {
          active[s] = open[s] && policy.feature_allowed(s, f);
          any = any || active[s];
          left[s] = policy.empty();
          seen[s] = 0;
        }
        if (!any) continue;
        for (const auto r : cols.order(f)) {
          const int sl = slot[r];
          if (sl < 0) continue;
          const auto s = static_cast<std::size_t>(sl);
          if (!active[s]) continue;
          const double v = x(r, f);
          if (seen[s] && v > last[s]) {
            if (policy.admissible(total[s], left[s])) {
              const double g = policy.gain(total[s], left[s]);
              if (g > best[s].gain) {
                best[s].gain = g;
                best[s].feature = static_cast<int>(f);
                best[s].threshold = last[s] + (v - last[s]) / 2.0;
                // Guard against the midpoint rounding up to v.
                if (!(best[s].threshold < v)) best[s].threshold = last[s];
              }
            }
          }
          policy.add(left[s], r);
          last[s] = v;
          seen[s] = 1;
        }
      }
    }

    std::vector<int> next_frontier;
    std::vector<int> child_slot(m * 2, -1);
    for (std::size_t s = 0; s < m; ++s) {
      const int id = frontier[s];
      if (best[s].feature >= 0) {
        const int l = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        auto& node = tree.nodes[static_cast<std::size_t>(id)];
        node.feature = best[s].feature;
        node.threshold = best[s].threshold;
        node.gain = best[s].gain;
        node.left = l;
        node.right = l + 1;
        child_slot[2 * s] = static_cast<int>(next_frontier.size());
        next_frontier.push_back(l);
        child_slot[2 * s + 1] = static_cast<int>(next_frontier.size());
        next_frontier.push_back(l + 1);
      } else {
        auto& node = tree.nodes[static_cast<std::size_t>(id)];
        node.value = static_cast<std::uint32_t>(tree.values.size());
        policy.leaf(total[s], tree.values);
      }
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (slot[r] < 0) continue;
      const auto s = static_cast<std::size_t>(slot[r]);
      if (best[s].feature < 0) {
        slot[r] = -1;
        continue;
      }
      const bool go_left = x(r, static_cast<std::size_t>(best[s].feature)) <= best[s].threshold;
      slot[r] = child_slot[2 * s + (go_left ? 0 : 1)];
      node_of_row[r] = next_frontier[static_cast<std::size_t>(slot[r])];
    }
    frontier = std::move(next_frontier);
  }
  if (leaf_of_row) *leaf_of_row = std::move(node_of_row);
  return tree;
}

struct ClassPolicy {
  struct Stats {
    std::vector<double> w;
    double total = 0.0;
    int count = 0;
  };

  const Matrix& x;
  std::span<const int> y;
  std::span<const double> weight;
  int k;
  const ClassTreeParams& p;
  Rng rng;
  std::vector<std::vector<char>> allowed;

  Stats empty() const { return {std::vector<double>(static_cast<std::size_t>(k), 0.0), 0.0, 0}; }
  void add(Stats& s, std::size_t r) const {
    s.w[static_cast<std::size_t>(y[r])] += weight[r];
    s.total += weight[r];
    ++s.count;
  }
  static double purity(const Stats& s) {
    if (s.total <= 0.0) return 0.0;
    double q = 0.0;
    for (const double v : s.w) q += v * v;
    return q / s.total;
  }
  bool splittable(const Stats& s, int depth) const {
    if (depth >= p.max_depth || s.count < p.min_samples_split || s.count < 2 * p.min_samples_leaf) return false;
    int classes = 0;
    for (const double v : s.w) classes += v > 0.0;
    return classes > 1;
  }
  bool admissible(const Stats& parent, const Stats& l) const {
    return l.count >= p.min_samples_leaf && parent.count - l.count >= p.min_samples_leaf;
  }
  // Weighted Gini decrease: W·gini(P) − W_L·gini(L) − W_R·gini(R).
  double gain(const Stats& parent, const Stats& l) const {
    const double wr = parent.total - l.total;
    double qr = 0.0;
    for (std::size_t c = 0; c < l.w.size(); ++c) {
      const double v = parent.w[c] - l.w[c];
      qr += v * v;
    }
    return purity(l) + (wr > 0.0 ? qr / wr : 0.0) - purity(parent);
  }
  void leaf(const Stats& s, std::vector<double>& values) const {
    for (const double v : s.w) values.push_back(s.total > 0.0 ? v / s.total : 1.0 / k);
  }
  bool feature_allowed(std::size_t s, std::size_t f) const { return allowed.empty() || allowed[s][f]; }
  void begin_level(std::size_t m) {
    const auto d = x.cols;
    const auto take = static_cast<std::size_t>(p.max_features);
    if (p.max_features <= 0 || take >= d) {
      allowed.clear();
      return;
    }
    allowed.assign(m, std::vector<char>(d, 0));
    std::vector<std::size_t> idx(d);
    for (std::size_t s = 0; s < m; ++s) {
      std::iota(idx.begin(), idx.end(), 0);
      for (std::size_t i = 0; i < take; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(d - i));
        std::swap(idx[i], idx[j]);
        allowed[s][idx[i]] = 1;
      }
    }
  }
};

struct GradientPolicy {
  struct Stats {
    double g = 0.0;
    double h = 0.0;
    int count = 0;
  };

  std::span<const double> grad;
  std::span<const double> hess;
  const GradientTreeParams& p;

  Stats empty() const { return {}; }
  void add(Stats& s, std::size_t r) const {
    s.g += grad[r];
    s.h += hess[r];
    ++s.count;
  }
  bool splittable(const Stats& s, int depth) const { return depth < p.max_depth && s.count >= 2; }
  bool admissible(const Stats& parent, const Stats& l) const {
    return l.h >= p.min_child_weight && parent.h - l.h >= p.min_child_weight;
  }
  double score(double g, double h) const { return g * g / (h + p.lambda); }
  double gain(const Stats& parent, const Stats& l) const {
    return 0.5 * (score(l.g, l.h) + score(parent.g - l.g, parent.h - l.h) - score(parent.g, parent.h));
  }
  void leaf(const Stats& s, std::vector<double>& values) const {
    values.push_back(-p.learning_rate * s.g / (s.h + p.lambda));
  }
  bool feature_allowed(std::size_t, std::size_t) const { return true; }
  void begin_level(std::size_t) {}
};

}  // namespace

int Tree::leaf_index(std::span<const double> x) const {
  int i = 0;
  while (!nodes[static_cast<std::size_t>(i)].is_leaf()) {
    const auto& node = nodes[static_cast<std::size_t>(i)];
    i = x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
  }
  return i;
}

std::span<const double> Tree::predict(std::span<const double> x) const {
  const auto& leaf = nodes[static_cast<std::size_t>(leaf_index(x))];
  return {values.data() + leaf.value, static_cast<std::size_t>(n_outputs)};
}

std::size_t Tree::depth() const {
  std::vector<std::size_t> d(nodes.size(), 0);
  std::size_t out = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out = std::max(out, d[i]);
    if (!nodes[i].is_leaf()) {
      d[static_cast<std::size_t>(nodes[i].left)] = d[i] + 1;
      d[static_cast<std::size_t>(nodes[i].right)] = d[i] + 1;
    }
  }
  return out;
}

std::size_t Tree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

SortedColumns::SortedColumns(const Matrix& x) : orders_(x.cols) {
  for (std::size_t f = 0; f < x.cols; ++f) {
    auto& o = orders_[f];
    o.resize(x.rows);
    std::iota(o.begin(), o.end(), 0u);
    std::stable_sort(o.begin(), o.end(), [&](std::uint32_t a, std::uint32_t b) { return x(a, f) < x(b, f); });
  }
}

Tree build_classification_tree(const Matrix& x, const SortedColumns& cols, std::span<const int> y, int n_classes,
                               std::span<const double> row_weight, const ClassTreeParams& params) {
  ClassPolicy policy{x, y, row_weight, n_classes, params, Rng(params.seed), {}};
  return grow(x, cols, policy, n_classes, nullptr);
}

Tree build_gradient_tree(const Matrix& x, const SortedColumns& cols, std::span<const double> grad,
                         std::span<const double> hess, const GradientTreeParams& params,
                         std::vector<int>* leaf_of_row) {
  GradientPolicy policy{grad, hess, params};
  return grow(x, cols, policy, 1, leaf_of_row);
}

std::vector<double> split_gain_totals(const std::vector<Tree>& trees, std::size_t n_features) {
  std::vector<double> out(n_features, 0.0);
  for (const auto& t : trees) {
    for (const auto& node : t.nodes) {
      if (!node.is_leaf()) out[static_cast<std::size_t>(node.feature)] += node.gain;
    }
  }
  return out;
}

}  // namespace bh::ml
