// Copyright 2026 The balfi-lab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "balfi/modelfind.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <random>
#include <thread>

namespace balfi {

namespace {

bool determines_circ(AxiomTag t) {
  return t == AxiomTag::ciw || t == AxiomTag::ci || t == AxiomTag::cl;
}

// Ascending list of x with fixed_bits <= x <= fixed_bits | free_bits.
std::vector<Element> supersets(std::uint32_t fixed_bits, std::uint32_t free_bits) {
  std::vector<Element> out;
  std::uint32_t s = 0;
  do {
    out.push_back(Element{fixed_bits | s});
    s = (s - free_bits) & free_bits;
  } while (s != 0);
  return out;
}

class Searcher {
 public:
  explicit Searcher(const SearchSpec& spec)
      : spec_(spec), alg_(spec.n_atoms), determined_(circ_determined(spec)) {
    const std::size_t size = alg_.size();
    for (AxiomTag t : spec.require_tags) {
      if (has_equation(t)) {
        if (std::find(eq_tags_.begin(), eq_tags_.end(), t) == eq_tags_.end()) eq_tags_.push_back(t);
      } else {
        leaf_schemas_.push_back(&schema_of(t));
      }
    }
    neg_options_.resize(size);
    for (std::size_t r = 0; r < size; ++r) {
      Element z = alg_.at(r);
      Element lower = alg_.compl_(z);
      auto fixed = spec.fixed_neg.find(r);
      if (fixed != spec.fixed_neg.end()) {
        if (alg_.contains(fixed->second) && alg_.leq(lower, fixed->second)) {
          neg_options_[r] = {fixed->second};
        }
      } else {
        neg_options_[r] = supersets(lower.bits, z.bits);
      }
    }
    for (std::size_t r = 0; r < size; ++r) slots_.push_back({true, r});
    if (!determined_) {
      for (std::size_t r = 0; r < size; ++r) slots_.push_back({false, r});
    }
    reset();
  }

  const PowersetAlgebra& algebra() const { return alg_; }
  bool determined() const { return determined_; }

  void reset() {
    const std::size_t size = alg_.size();
    neg_.assign(size, Element{});
    circ_.assign(size, Element{});
    has_neg_.assign(size, 0);
    has_circ_.assign(size, 0);
  }

  // Index of the first slot with more than one option, or slots_.size().
  std::size_t split_depth() const {
    for (std::size_t d = 0; d < alg_.size(); ++d) {
      if (neg_options_[d].size() > 1) return d;
    }
    return slots_.size();
  }
  std::size_t options_at(std::size_t depth) const { return neg_options_[slots_[depth].rank].size(); }

  // Exhaustive depth-first sweep. If `forced` is set, slot `forced->first`
  // only takes its option with that index.
  void run(const std::function<bool(const Balfi&)>& emit,
           std::optional<std::pair<std::size_t, std::size_t>> forced = std::nullopt) {
    emit_ = &emit;
    forced_ = forced;
    stop_ = false;
    reset();
    dfs(0);
  }

  // One uniformly sampled candidate per call; returns it if it meets `spec`.
  std::optional<Balfi> sample(std::mt19937_64& rng) {
    reset();
    const std::size_t size = alg_.size();
    for (std::size_t r = 0; r < size; ++r) {
      const auto& opts = neg_options_[r];
      if (opts.empty()) return std::nullopt;
      neg_[r] = opts[rng() % opts.size()];
      has_neg_[r] = 1;
    }
    for (std::size_t r = 0; r < size; ++r) {
      Element room = circ_room(r);
      if (determined_) {
        circ_[r] = room;
      } else {
        circ_[r] = Element{static_cast<std::uint32_t>(rng()) & room.bits};
      }
      auto fixed = spec_.fixed_circ.find(r);
      if (fixed != spec_.fixed_circ.end()) {
        if (!alg_.leq(fixed->second, room) || (determined_ && fixed->second != room)) {
          return std::nullopt;
        }
        circ_[r] = fixed->second;
      }
      has_circ_[r] = 1;
    }
    if (!partial_ok()) return std::nullopt;
    Balfi b = trusted_balfi(alg_, neg_, circ_);
    if (!leaf_ok(b)) return std::nullopt;
    return b;
  }

 private:
  struct Slot {
    bool is_neg;
    std::size_t rank;
  };

  Element circ_room(std::size_t r) const {
    Element z = alg_.at(r);
    return alg_.compl_(alg_.meet(z, neg_[r]));
  }

  void dfs(std::size_t depth) {
    if (stop_) return;
    if (depth == slots_.size()) {
      Balfi b = trusted_balfi(alg_, neg_, circ_);
      if (leaf_ok(b) && !(*emit_)(b)) stop_ = true;
      return;
    }
    const Slot s = slots_[depth];
    const std::size_t r = s.rank;
    if (s.is_neg) {
      const auto& opts = neg_options_[r];
      for (std::size_t i = 0; i < opts.size() && !stop_; ++i) {
        if (forced_ && forced_->first == depth && forced_->second != i) continue;
        neg_[r] = opts[i];
        has_neg_[r] = 1;
        bool viable = true;
        if (determined_) {
          circ_[r] = circ_room(r);
          has_circ_[r] = 1;
          auto fixed = spec_.fixed_circ.find(r);
          viable = fixed == spec_.fixed_circ.end() || fixed->second == circ_[r];
        }
        if (viable && partial_ok()) dfs(depth + 1);
        has_neg_[r] = 0;
        has_circ_[r] = 0;
      }
      return;
    }
    const Element room = circ_room(r);
    auto fixed = spec_.fixed_circ.find(r);
    std::vector<Element> opts;
    if (fixed != spec_.fixed_circ.end()) {
      if (alg_.leq(fixed->second, room)) opts.push_back(fixed->second);
    } else {
      opts = supersets(0, room.bits);
    }
    for (Element c : opts) {
      if (stop_) break;
      circ_[r] = c;
      has_circ_[r] = 1;
      if (partial_ok()) dfs(depth + 1);
      has_circ_[r] = 0;
    }
  }

  // Every fully assigned instance of a required equation holds.
  bool partial_ok() const {
    for (AxiomTag t : eq_tags_) {
      if (!tag_ok(t)) return false;
    }
    return true;
  }

  bool tag_ok(AxiomTag t) const {
    const std::size_t size = alg_.size();
    if (t == AxiomTag::caAnd || t == AxiomTag::caOr || t == AxiomTag::caImp) {
      for (std::size_t i = 0; i < size; ++i) {
        if (!has_circ_[i]) continue;
        for (std::size_t j = 0; j < size; ++j) {
          if (!has_circ_[j]) continue;
          Element x = alg_.at(i), y = alg_.at(j);
          Element xy = t == AxiomTag::caAnd  ? alg_.meet(x, y)
                       : t == AxiomTag::caOr ? alg_.join(x, y)
                                             : alg_.impl(x, y);
          if (!has_circ_[xy.bits]) continue;
          Element both = alg_.meet(circ_[i], circ_[j]);
          if (alg_.meet(both, circ_[xy.bits]) != both) return false;
        }
      }
      return true;
    }
    for (std::size_t r = 0; r < size; ++r) {
      if (!has_neg_[r]) continue;
      Element a = alg_.at(r);
      Element na = neg_[r];
      Element contra = alg_.meet(a, na);
      switch (t) {
        case AxiomTag::ciw:
          if (has_circ_[r] && circ_[r] != alg_.compl_(contra)) return false;
          break;
        case AxiomTag::ci:
          if (has_circ_[r] && has_neg_[circ_[r].bits] && neg_[circ_[r].bits] != contra) {
            return false;
          }
          break;
        case AxiomTag::cl:
          if (has_circ_[r] && has_neg_[contra.bits] && circ_[r] != neg_[contra.bits]) return false;
          break;
        case AxiomTag::cf:
          if (has_neg_[na.bits] && !alg_.leq(neg_[na.bits], a)) return false;
          break;
        case AxiomTag::ce:
          if (has_neg_[na.bits] && !alg_.leq(a, neg_[na.bits])) return false;
          break;
        default:
          break;
      }
    }
    return true;
  }

  bool leaf_ok(const Balfi& b) const {
    for (const Schema* s : leaf_schemas_) {
      if (!models_schema(b, *s)) return false;
    }
    for (AxiomTag t : spec_.forbid_tags) {
      bool holds = has_equation(t) ? satisfies_equation(b, t) : models_schema(b, schema_of(t));
      if (holds) return false;
    }
    for (const auto& s : spec_.require_schemas) {
      if (!models_schema(b, s)) return false;
    }
    for (const auto& s : spec_.forbid_schemas) {
      if (models_schema(b, s)) return false;
    }
    if (spec_.require_paraconsistent && !is_paraconsistent(b)) return false;
    if (spec_.require_lfi && !is_lfi(b)) return false;
    for (const auto& p : spec_.predicates) {
      if (!p(b)) return false;
    }
    return true;
  }

  const SearchSpec& spec_;
  PowersetAlgebra alg_;
  bool determined_;
  std::vector<AxiomTag> eq_tags_;
  std::vector<const Schema*> leaf_schemas_;
  std::vector<std::vector<Element>> neg_options_;
  std::vector<Slot> slots_;

  std::vector<Element> neg_, circ_;
  std::vector<char> has_neg_, has_circ_;
  const std::function<bool(const Balfi&)>* emit_ = nullptr;
  std::optional<std::pair<std::size_t, std::size_t>> forced_;
  bool stop_ = false;
};

std::size_t run_random(const SearchSpec& spec, const std::function<bool(const Balfi&)>& fn) {
  Searcher searcher(spec);
  std::mt19937_64 rng(spec.seed);
  std::size_t wanted = spec.random_count;
  if (spec.limit) wanted = std::min(wanted, *spec.limit);
  const std::size_t max_attempts = spec.random_count * spec.attempts_per_sample;
  std::size_t delivered = 0;
  for (std::size_t attempt = 0; attempt < max_attempts && delivered < wanted; ++attempt) {
    if (auto b = searcher.sample(rng)) {
      ++delivered;
      if (!fn(*b)) break;
    }
  }
  return delivered;
}

std::size_t run_parallel(const SearchSpec& spec, const std::function<bool(const Balfi&)>& fn) {
  Searcher probe(spec);
  const std::size_t depth = probe.split_depth();
  const std::size_t parts = depth < probe.algebra().size() ? probe.options_at(depth) : 1;
  const std::size_t per_part_limit = spec.limit.value_or(SIZE_MAX);
  std::vector<std::vector<Balfi>> results(parts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    Searcher searcher(spec);
    for (std::size_t k = next++; k < parts; k = next++) {
      auto& out = results[k];
      std::function<bool(const Balfi&)> collect = [&](const Balfi& b) {
        out.push_back(b);
        return out.size() < per_part_limit;
      };
      if (parts == 1) {
        searcher.run(collect);
      } else {
        searcher.run(collect, std::make_pair(depth, k));
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(spec.jobs, parts));
  std::vector<std::thread> threads;
  for (unsigned i = 0; i < n_threads; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  std::size_t delivered = 0;
  for (const auto& part : results) {
    for (const auto& b : part) {
      if (delivered == per_part_limit) return delivered;
      ++delivered;
      if (!fn(b)) return delivered;
    }
  }
  return delivered;
}

}  // namespace

bool circ_determined(const SearchSpec& spec) {
  return std::any_of(spec.require_tags.begin(), spec.require_tags.end(), determines_circ);
}

double estimate_space(const SearchSpec& spec) {
  PowersetAlgebra alg(spec.n_atoms);
  const bool determined = circ_determined(spec);
  double total = 1.0;
  for (std::size_t r = 0; r < alg.size(); ++r) {
    Element z = alg.at(r);
    std::vector<Element> negs;
    auto fixed = spec.fixed_neg.find(r);
    if (fixed != spec.fixed_neg.end()) {
      if (alg.contains(fixed->second) && alg.leq(alg.compl_(z), fixed->second)) {
        negs.push_back(fixed->second);
      }
    } else {
      negs = supersets(alg.compl_(z).bits, z.bits);
    }
    double pairs = 0.0;
    auto fixed_circ = spec.fixed_circ.find(r);
    for (Element n : negs) {
      Element room = alg.compl_(alg.meet(z, n));
      if (determined) {
        pairs += 1.0;
      } else if (fixed_circ != spec.fixed_circ.end()) {
        pairs += alg.leq(fixed_circ->second, room) ? 1.0 : 0.0;
      } else {
        pairs += std::ldexp(1.0, std::popcount(room.bits));
      }
    }
    total *= pairs;
  }
  return total;
}

std::size_t for_each_balfi(const SearchSpec& spec, const std::function<bool(const Balfi&)>& fn) {
  if (spec.mode == SearchMode::Random) return run_random(spec, fn);
  if (!spec.limit) {
    const double estimate = estimate_space(spec);
    if (estimate > spec.space_cap) throw SpaceTooLarge(estimate, spec.space_cap);
  }
  if (spec.limit && *spec.limit == 0) return 0;
  if (spec.jobs > 1) return run_parallel(spec, fn);
  Searcher searcher(spec);
  std::size_t delivered = 0;
  std::function<bool(const Balfi&)> emit = [&](const Balfi& b) {
    ++delivered;
    if (!fn(b)) return false;
    return !spec.limit || delivered < *spec.limit;
  };
  searcher.run(emit);
  return delivered;
}

std::vector<Balfi> enumerate_balfis(const SearchSpec& spec) {
  std::vector<Balfi> out;
  for_each_balfi(spec, [&](const Balfi& b) {
    out.push_back(b);
    return true;
  });
  return out;
}

std::optional<Countermodel> refute_in(const Balfi& b, std::span<const Formula> gamma,
                                      const Formula& phi, ConsequenceMode mode) {
  std::vector<std::string> order;
  auto collect = [&](const Formula& f) {
    for (auto& x : variables(f)) {
      if (std::find(order.begin(), order.end(), x) == order.end()) order.push_back(x);
    }
  };
  for (const auto& g : gamma) collect(g);
  collect(phi);
  std::vector<TermFunction> premises;
  for (const auto& g : gamma) premises.emplace_back(g, order);
  TermFunction goal(phi, order);
  const PowersetAlgebra& alg = b.algebra();
  std::optional<Countermodel> found;
  for_each_tuple(alg.size(), order.size(), [&](std::span<const Element> t) {
    Element value = goal(b, t);
    bool refuted = false;
    if (mode == ConsequenceMode::Local) {
      Element meet = alg.one();
      for (const auto& p : premises) meet = alg.meet(meet, p(b, t));
      refuted = !alg.leq(meet, value);
    } else {
      refuted = value != alg.one();
      for (const auto& p : premises) refuted = refuted && p(b, t) == alg.one();
    }
    if (!refuted) return true;
    Valuation v;
    for (std::size_t i = 0; i < order.size(); ++i) v[order[i]] = t[i];
    found = Countermodel{b, std::move(v)};
    return false;
  });
  return found;
}

std::optional<Countermodel> find_countermodel(const SearchSpec& spec,
                                              std::span<const Formula> gamma,
                                              const Formula& phi, ConsequenceMode mode) {
  std::optional<Countermodel> found;
  for_each_balfi(spec, [&](const Balfi& b) {
    found = refute_in(b, gamma, phi, mode);
    return !found.has_value();
  });
  return found;
}

namespace {

constexpr std::array<std::pair<ExampleName, const char*>, 5> kExamples{{
    {ExampleName::BRemark, "B_remark"},
    {ExampleName::BPrime, "B_prime"},
    {ExampleName::BRci16a, "B_rci_16a"},
    {ExampleName::BRci16b, "B_rci_16b"},
    {ExampleName::BTriplePrime, "B_triple_prime"},
}};

constexpr std::array<ExampleName, 5> kExampleList{
    ExampleName::BRemark, ExampleName::BPrime, ExampleName::BRci16a, ExampleName::BRci16b,
    ExampleName::BTriplePrime};

}  // namespace

const char* name(ExampleName e) noexcept { return kExamples[static_cast<std::size_t>(e)].second; }

std::optional<ExampleName> example_from_name(std::string_view name) {
  for (const auto& [e, n] : kExamples) {
    if (name == n) return e;
  }
  return std::nullopt;
}

std::span<const ExampleName> all_examples() noexcept { return kExampleList; }

SearchSpec example_spec(ExampleName e) {
  // Over A4: rank 0 = 0, rank 1 = a = {w1}, rank 2 = b = {w2}, rank 3 = 1.
  const Element zero{0}, a{1}, b{2}, one{3};
  SearchSpec spec;
  spec.limit = 1;
  switch (e) {
    case ExampleName::BRemark:
      spec.n_atoms = 2;
      spec.fixed_neg = {{1, b}, {3, one}};
      spec.fixed_circ = {{1, a}, {3, zero}};
      break;
    case ExampleName::BPrime: {
      spec.n_atoms = 2;
      spec.require_tags = {AxiomTag::cf};
      spec.forbid_tags = {AxiomTag::ciw};
      spec.fixed_neg = {{1, one}};
      spec.fixed_circ = {{1, zero}};
      spec.require_paraconsistent = true;
      spec.require_lfi = true;
      const Formula p = var("p"), q = var("q");
      // v'(p)=1, v'(q)=a refutes p, @p |= q; v''(p)=0, v''(q)=b refutes !p, @p |= q.
      spec.predicates.push_back([=](const Balfi& m) {
        const auto& alg = m.algebra();
        Valuation v1{{"p", one}, {"q", a}}, v2{{"p", zero}, {"q", b}};
        Element lhs1 = evaluate(m, v1, conj(p, circ(p)));
        Element lhs2 = evaluate(m, v2, conj(neg(p), circ(p)));
        return !alg.leq(lhs1, evaluate(m, v1, q)) && !alg.leq(lhs2, evaluate(m, v2, q));
      });
      break;
    }
    case ExampleName::BRci16a:
    case ExampleName::BRci16b:
      spec.n_atoms = 4;
      spec.require_tags = {AxiomTag::ci, AxiomTag::cf};
      spec.require_paraconsistent = true;
      spec.limit = e == ExampleName::BRci16a ? 1 : 2;
      break;
    case ExampleName::BTriplePrime:
      spec.n_atoms = 2;
      spec.require_tags = {AxiomTag::cl};
      spec.forbid_tags = {AxiomTag::cf};
      spec.require_paraconsistent = true;
      // !!0 = !1 since !0 = 1 is forced.
      spec.fixed_neg = {{3, a}};
      break;
  }
  return spec;
}

Balfi reconstruct_example(ExampleName e) {
  SearchSpec spec = example_spec(e);
  std::vector<Balfi> found = enumerate_balfis(spec);
  if (found.size() < *spec.limit) {
    throw Unsatisfiable(std::string("no model meets the constraints of ") + name(e));
  }
  return found.back();
}

}  // namespace balfi
