#include "ccr/fixtures.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "ccr/error.hpp"

namespace ccr::fixtures {

namespace {

FactorDescription single_vertex_with_rays(const std::string& v, const std::vector<std::string>& rays) {
  FactorDescription f;
  f.vertices = {v};
  for (const auto& r : rays) f.rays.emplace_back(r, v);
  return f;
}

std::string bits(std::uint32_t mask, int dim) {
  std::string s = "v";
  for (int b = dim - 1; b >= 0; --b) s += ((mask >> b) & 1U) ? '1' : '0';
  return s;
}

std::uint32_t majority(std::uint32_t a, std::uint32_t b, std::uint32_t c) { return (a & b) | (b & c) | (c & a); }

std::set<std::uint32_t> median_closure(std::set<std::uint32_t> s) {
  bool grew = true;
  while (grew && s.size() <= 16) {
    grew = false;
    const std::vector<std::uint32_t> v(s.begin(), s.end());
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        for (std::size_t k = j + 1; k < v.size(); ++k) {
          if (s.insert(majority(v[i], v[j], v[k])).second) grew = true;
        }
      }
    }
  }
  return s;
}

}  // namespace

ComplexDescription star4() {
  ComplexDescription d;
  d.name = "STAR4";
  d.factors.push_back(single_vertex_with_rays("c", {"x", "y", "z", "z'"}));
  return d;
}

ComplexDescription line() {
  ComplexDescription d;
  d.name = "LINE";
  d.factors.push_back(single_vertex_with_rays("0", {"+", "-"}));
  return d;
}

ComplexDescription barbell(int length) {
  if (length < 1) throw PreconditionError("barbell length must be at least 1");
  ComplexDescription d;
  d.name = "BARBELL(" + std::to_string(length) + ")";
  FactorDescription f;
  std::vector<std::string> path = {"p"};
  for (int i = 1; i < length; ++i) path.push_back("s" + std::to_string(i));
  path.push_back("q");
  f.vertices = path;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) f.edges.emplace_back(path[i], path[i + 1]);
  for (const char* r : {"x1", "x2", "x3"}) f.rays.emplace_back(r, "p");
  for (const char* r : {"y1", "y2", "y3"}) f.rays.emplace_back(r, "q");
  d.factors.push_back(std::move(f));
  return d;
}

ComplexDescription squarecore() {
  ComplexDescription d = bare_square();
  d.name = "SQUARECORE";
  for (const char* v : {"a", "b", "c", "d"}) d.factors[0].rays.emplace_back(std::string("r") + v, v);
  return d;
}

ComplexDescription bare_square() {
  ComplexDescription d;
  d.name = "SQUARE";
  FactorDescription f;
  f.vertices = {"a", "b", "c", "d"};
  f.edges = {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}};
  d.factors.push_back(std::move(f));
  return d;
}

ComplexDescription zzz() {
  ComplexDescription d;
  d.name = "ZZZ";
  for (int i = 0; i < 3; ++i) d.factors.push_back(single_vertex_with_rays("0", {"+", "-"}));
  const RawCoord zero{CoordKind::Core, "0", 0};
  const RawCoord plus1{CoordKind::Ray, "+", 1};
  const RawCoord plus_inf{CoordKind::End, "+", 0};
  const RawCoord minus_inf{CoordKind::End, "-", 0};
  d.points = {
      {"x", {zero, plus1, plus_inf}},
      {"y", {plus_inf, zero, plus1}},
      {"z", {zero, minus_inf, zero}},
      {"z'", {plus1, plus1, minus_inf}},
  };
  return d;
}

ComplexDescription random_eligible(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const int dim = static_cast<int>(uniform(1, 4));
    const std::size_t target = uniform(1, std::min<std::size_t>(12, std::size_t{1} << dim));
    std::set<std::uint32_t> s = {static_cast<std::uint32_t>(uniform(0, (1U << dim) - 1))};
    while (s.size() < target) {
      auto it = s.begin();
      std::advance(it, static_cast<long>(uniform(0, s.size() - 1)));
      s.insert(*it ^ (1U << uniform(0, static_cast<std::uint64_t>(dim) - 1)));
    }
    s = median_closure(std::move(s));
    if (s.size() > 16) continue;

    ComplexDescription d;
    d.name = "RANDOM-" + std::to_string(seed);
    FactorDescription f;
    for (std::uint32_t v : s) f.vertices.push_back(bits(v, dim));
    for (std::uint32_t a : s) {
      for (std::uint32_t b : s) {
        if (a < b && std::popcount(a ^ b) == 1) f.edges.emplace_back(bits(a, dim), bits(b, dim));
      }
    }
    d.factors.push_back(std::move(f));

    bool ok = false;
    try {
      for (int rays = 0; rays <= 8; ++rays) {
        const CubeComplex x = CubeComplex::load(d);
        const EligibilityReport& rep = x.eligibility();
        if (rep.eligible()) {
          ok = true;
          break;
        }
        if (rays == 8) break;
        std::string at;
        if (!rep.extremal_vertices.empty()) {
          at = rep.extremal_vertices[uniform(0, rep.extremal_vertices.size() - 1)].second;
        } else {
          at = d.factors[0].vertices[uniform(0, d.factors[0].vertices.size() - 1)];
        }
        d.factors[0].rays.emplace_back("r" + std::to_string(rays), at);
      }
    } catch (const InputError&) {
      continue;
    }
    if (ok) return d;
  }
  throw InternalError("random_eligible: no eligible complex after 1000 attempts");
}

Relabeling relabel(const ComplexDescription& desc, std::uint64_t seed) {
  if (desc.factors.size() != 1) throw PreconditionError("relabel expects a single-factor complex");
  std::mt19937_64 rng(seed);
  const FactorDescription& f = desc.factors[0];
  Relabeling out;

  std::vector<std::size_t> perm(f.vertices.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 0; i < f.vertices.size(); ++i) out.vertices[f.vertices[i]] = "n" + std::to_string(perm[i]);

  std::vector<std::size_t> rperm(f.rays.size());
  std::iota(rperm.begin(), rperm.end(), 0);
  std::shuffle(rperm.begin(), rperm.end(), rng);
  for (std::size_t i = 0; i < f.rays.size(); ++i) out.rays[f.rays[i].first] = "e" + std::to_string(rperm[i]);

  ComplexDescription& img = out.image;
  img.name = desc.name + "'";
  FactorDescription g;
  for (const auto& v : f.vertices) g.vertices.push_back(out.vertices.at(v));
  for (const auto& [a, b] : f.edges) g.edges.emplace_back(out.vertices.at(a), out.vertices.at(b));
  for (const auto& [r, at] : f.rays) g.rays.emplace_back(out.rays.at(r), out.vertices.at(at));
  std::sort(g.vertices.begin(), g.vertices.end());
  std::sort(g.edges.begin(), g.edges.end());
  std::sort(g.rays.begin(), g.rays.end());
  img.factors.push_back(std::move(g));
  for (const auto& alias : desc.points) {
    PointAlias a = alias;
    for (RawCoord& c : a.coords) c.id = c.kind == CoordKind::Core ? out.vertices.at(c.id) : out.rays.at(c.id);
    img.points.push_back(std::move(a));
  }
  return out;
}

}  // namespace ccr::fixtures
