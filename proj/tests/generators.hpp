#pragma once

#include <cstdint>
#include <deque>
#include <random>
#include <string>
#include <vector>

#include "grouplat/geodesic.hpp"
#include "grouplat/words.hpp"

namespace grouplat::test {

inline AlphabetPtr letters(std::size_t rank) {
  static const std::vector<std::string> pool{"a", "b", "c", "d", "e"};
  return Alphabet::make({pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(rank)});
}

/// Uniform freely reduced word of exactly n letters.
inline Word random_reduced(std::mt19937& rng, const AlphabetPtr& a, std::size_t n) {
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(2 * a->rank() - 1));
  std::vector<Letter> out;
  while (out.size() < n) {
    Letter l = Letter::from_code(pick(rng));
    if (!out.empty() && out.back() == l.inverse()) continue;
    out.push_back(l);
  }
  return Word(a, std::move(out));
}

/// Unreduced word of exactly n letters.
inline Word random_word(std::mt19937& rng, const AlphabetPtr& a, std::size_t n) {
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(2 * a->rank() - 1));
  std::vector<Letter> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(Letter::from_code(pick(rng)));
  return Word(a, std::move(out));
}

inline std::size_t uniform(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// 1..max_gens reduced generators with lengths in [1, max_len].
inline std::vector<Word> random_subgroup(std::mt19937& rng, const AlphabetPtr& a,
                                         std::size_t max_gens, std::size_t max_len) {
  std::vector<Word> gens;
  std::size_t n = uniform(rng, 1, max_gens);
  for (std::size_t k = 0; k < n; ++k) gens.push_back(random_reduced(rng, a, uniform(rng, 1, max_len)));
  return gens;
}

/// Closed walk at the root of g: `steps` random edges, then a shortest way
/// back. Returns edge indices.
inline std::vector<std::uint32_t> random_circuit(std::mt19937& rng, const BouquetGraph& g,
                                                 std::size_t steps) {
  std::vector<std::uint32_t> path;
  Vertex at = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    const auto& out = g.out(at);
    std::uint32_t e = out[uniform(rng, 0, out.size() - 1)];
    path.push_back(e);
    at = g.edges()[e].target;
  }
  std::vector<std::int64_t> via(g.vertex_count(), -1);
  std::deque<Vertex> queue{at};
  via[at] = static_cast<std::int64_t>(g.edges().size());
  while (!queue.empty() && via[0] < 0) {
    Vertex v = queue.front();
    queue.pop_front();
    for (std::uint32_t e : g.out(v)) {
      Vertex t = g.edges()[e].target;
      if (via[t] >= 0) continue;
      via[t] = e;
      queue.push_back(t);
    }
  }
  std::vector<std::uint32_t> back;
  for (Vertex v = 0; v != at; v = g.edges()[static_cast<std::size_t>(via[v])].origin) {
    back.push_back(static_cast<std::uint32_t>(via[v]));
  }
  path.insert(path.end(), back.rbegin(), back.rend());
  return path;
}

/// reduce(μ(p)) and γ(ν(p)) for a path p of edge indices.
inline std::pair<Word, Word> circuit_images(const BouquetGraph& g,
                                            const std::vector<std::uint32_t>& path) {
  std::vector<Letter> mu;
  std::vector<Letter> nu;
  for (std::uint32_t e : path) {
    const BouquetEdge& edge = g.edges()[e];
    if (edge.mu != kEpsilon) mu.push_back(Letter::from_code(static_cast<std::uint32_t>(edge.mu)));
    auto part = g.arena().expand(edge.nu, 1'000'000);
    nu.insert(nu.end(), part.begin(), part.end());
  }
  return {reduce(Word(g.alphabet(), mu)), evaluate(nu, g.generators())};
}

}  // namespace grouplat::test
