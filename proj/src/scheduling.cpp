#include "arena/scheduling.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace arena {

namespace {

std::pair<std::string, std::string> canon(const std::string& a,
                                          const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void check_unique(const std::vector<std::string>& ids) {
    std::unordered_set<std::string> seen;
    for (const auto& id : ids) {
        if (!seen.insert(id).second) {
            throw std::invalid_argument("duplicate instance id: " + id);
        }
    }
}

}  // namespace

void MatchHistory::record(const std::string& a, const std::string& b) {
    if (a == b) {
        throw std::invalid_argument("self-pair in history: " + a);
    }
    counts_[canon(a, b)] += 1;
}

bool MatchHistory::played(const std::string& a, const std::string& b) const {
    return count(a, b) > 0;
}

int MatchHistory::count(const std::string& a, const std::string& b) const {
    if (a == b) return 0;
    auto it = counts_.find(canon(a, b));
    return it == counts_.end() ? 0 : it->second;
}

void MatchHistory::set_count(const std::string& a, const std::string& b,
                             int n) {
    counts_[canon(a, b)] = n;
}

RoundSchedule schedule_random(const std::vector<std::string>& ids, Rng& rng,
                              int round_index) {
    check_unique(ids);
    RoundSchedule out;
    out.round_index = round_index;
    std::vector<size_t> pool(ids.size());
    for (size_t i = 0; i < pool.size(); ++i) pool[i] = i;

    while (pool.size() >= 2) {
        size_t ia = rng.next_below(pool.size());
        size_t first = pool[ia];
        pool.erase(pool.begin() + static_cast<long>(ia));
        size_t ib = rng.next_below(pool.size());
        size_t second = pool[ib];
        pool.erase(pool.begin() + static_cast<long>(ib));
        size_t lo = std::min(first, second), hi = std::max(first, second);
        out.pairs.emplace_back(ids[lo], ids[hi]);
    }
    if (pool.size() == 1) out.bye = ids[pool[0]];
    return out;
}

RoundSchedule schedule_graph(const std::vector<std::string>& ids,
                             const MatchHistory& history, int n_total,
                             int round_index) {
    check_unique(ids);
    if (n_total <= 0) throw std::invalid_argument("n_total must be positive");
    const size_t n = ids.size();

    // Adjacency restricted to the given ids.
    std::vector<std::vector<size_t>> adj(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (history.played(ids[i], ids[j])) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }
    }

    // All-pairs shortest paths via BFS from each node; unreachable => n_total.
    const int unreachable = n_total;
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, unreachable));
    std::vector<int> level(n);
    for (size_t src = 0; src < n; ++src) {
        std::fill(level.begin(), level.end(), -1);
        level[src] = 0;
        std::deque<size_t> q{src};
        while (!q.empty()) {
            size_t u = q.front();
            q.pop_front();
            for (size_t v : adj[u]) {
                if (level[v] < 0) {
                    level[v] = level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        for (size_t j = 0; j < n; ++j) {
            if (j != src && level[j] > 0) dist[src][j] = level[j];
        }
    }

    // Candidate pairs sorted farthest first, then smallest in dataset order.
    struct Cand {
        int d;
        size_t i, j;
    };
    std::vector<Cand> cands;
    cands.reserve(n * (n - 1) / 2);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            cands.push_back({dist[i][j], i, j});
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.d != b.d) return a.d > b.d;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    RoundSchedule out;
    out.round_index = round_index;
    std::vector<bool> used(n, false);
    size_t remaining = n;
    for (const Cand& c : cands) {
        if (remaining < 2) break;
        if (used[c.i] || used[c.j]) continue;
        used[c.i] = used[c.j] = true;
        remaining -= 2;
        out.pairs.emplace_back(ids[c.i], ids[c.j]);
    }
    if (remaining == 1) {
        for (size_t i = n; i-- > 0;) {
            if (!used[i]) {
                out.bye = ids[i];
                break;
            }
        }
    }
    return out;
}

RoundSchedule schedule_swiss(const std::vector<Rating>& ratings,
                             int round_index) {
    std::vector<std::string> ids;
    ids.reserve(ratings.size());
    for (const auto& r : ratings) ids.push_back(r.instance_id);
    check_unique(ids);

    // Stable sort keeps input (dataset) order for equal elos.
    std::vector<const Rating*> ranked;
    ranked.reserve(ratings.size());
    for (const auto& r : ratings) ranked.push_back(&r);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const Rating* a, const Rating* b) {
                         return a->elo > b->elo;
                     });

    RoundSchedule out;
    out.round_index = round_index;
    const size_t n = ranked.size();
    size_t base = 0;
    while (base < n) {
        const size_t g = std::min<size_t>(8, n - base);
        for (size_t i = 0; i < g / 2; ++i) {
            out.pairs.emplace_back(ranked[base + i]->instance_id,
                                   ranked[base + g - 1 - i]->instance_id);
        }
        if (g % 2 == 1) out.bye = ranked[base + g / 2]->instance_id;
        base += g;
    }
    return out;
}

void record_round(MatchHistory& history, const RoundSchedule& schedule) {
    for (const auto& [a, b] : schedule.pairs) history.record(a, b);
}

}  // namespace arena
