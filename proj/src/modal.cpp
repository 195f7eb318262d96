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

#include "balfi/modal.hpp"

#include <atomic>
#include <thread>

namespace balfi {

namespace {

void check_worlds(int worlds) {
  if (worlds < 1 || worlds > NeighborhoodFrame::kMaxWorlds) {
    throw Error("worlds must be between 1 and " + std::to_string(NeighborhoodFrame::kMaxWorlds));
  }
}

Element lookup(const Denotation& d, const std::string& x) {
  auto it = d.find(x);
  if (it == d.end()) throw UnboundError(x);
  return it->second;
}

struct SetOps {
  std::uint32_t all;
  Element compl_(Element x) const { return {~x.bits & all}; }
  Element meet(Element x, Element y) const { return {x.bits & y.bits}; }
  Element join(Element x, Element y) const { return {x.bits | y.bits}; }
  Element impl(Element x, Element y) const { return {(~x.bits & all) | y.bits}; }
  bool subset(Element x, Element y) const { return (x.bits & ~y.bits) == 0; }
};

Element denote_rec(const NeighborhoodModel& m, const SetOps& w, const Formula& f) {
  const NeighborhoodFrame& fr = m.frame;
  switch (f.op()) {
    case Connective::Var:
      return lookup(m.d, f.name());
    case Connective::Bottom:
      return Element{0};
    case Connective::Top:
      return Element{w.all};
    case Connective::ParaNeg: {
      Element x = denote_rec(m, w, f.child());
      return w.join(w.compl_(x), fr.s_neg[x.bits]);
    }
    case Connective::Circ: {
      Element x = denote_rec(m, w, f.child());
      Element nx = w.join(w.compl_(x), fr.s_neg[x.bits]);
      return w.meet(w.compl_(w.meet(x, nx)), fr.s_circ[x.bits]);
    }
    case Connective::ClassNeg:
      return w.compl_(denote_rec(m, w, f.child()));
    case Connective::And:
      return w.meet(denote_rec(m, w, f.left()), denote_rec(m, w, f.right()));
    case Connective::Or:
      return w.join(denote_rec(m, w, f.left()), denote_rec(m, w, f.right()));
    case Connective::Imp:
      return w.impl(denote_rec(m, w, f.left()), denote_rec(m, w, f.right()));
    default:
      throw SignatureError(spelling(f.op()), name(SignatureId::Sigma));
  }
}

Element box(const MinimalModel& n, const std::vector<std::uint64_t>& nb, Element x) {
  std::uint32_t out = 0;
  for (int w = 0; w < n.worlds; ++w) {
    if ((nb[w] >> x.bits) & 1u) out |= 1u << w;
  }
  return Element{out};
}

Element bimodal_rec(const MinimalModel& n, const SetOps& w, const Formula& f) {
  switch (f.op()) {
    case Connective::Var:
      return lookup(n.d, f.name());
    case Connective::Bottom:
      return Element{0};
    case Connective::Top:
      return Element{w.all};
    case Connective::ClassNeg:
      return w.compl_(bimodal_rec(n, w, f.child()));
    case Connective::Box1:
      return box(n, n.n1, bimodal_rec(n, w, f.child()));
    case Connective::Box2:
      return box(n, n.n2, bimodal_rec(n, w, f.child()));
    case Connective::Dia1:
      return w.compl_(box(n, n.n1, w.compl_(bimodal_rec(n, w, f.child()))));
    case Connective::Dia2:
      return w.compl_(box(n, n.n2, w.compl_(bimodal_rec(n, w, f.child()))));
    case Connective::And:
      return w.meet(bimodal_rec(n, w, f.left()), bimodal_rec(n, w, f.right()));
    case Connective::Or:
      return w.join(bimodal_rec(n, w, f.left()), bimodal_rec(n, w, f.right()));
    case Connective::Imp:
      return w.impl(bimodal_rec(n, w, f.left()), bimodal_rec(n, w, f.right()));
    default:
      throw SignatureError(spelling(f.op()), name(SignatureId::SigmaBM));
  }
}

}  // namespace

void NeighborhoodFrame::validate() const {
  check_worlds(worlds);
  if (s_neg.size() != subsets() || s_circ.size() != subsets()) {
    throw Error("frame maps must have " + std::to_string(subsets()) + " entries");
  }
  for (std::size_t i = 0; i < subsets(); ++i) {
    if ((s_neg[i].bits | s_circ[i].bits) & ~universe().bits) throw Error("frame map leaves W");
  }
}

void MinimalModel::validate() const {
  check_worlds(worlds);
  if (n1.size() != static_cast<std::size_t>(worlds) || n2.size() != static_cast<std::size_t>(worlds)) {
    throw Error("neighbourhood lists must have one entry per world");
  }
  const std::size_t subsets = std::size_t{1} << worlds;
  const std::uint64_t mask = subsets == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << subsets) - 1;
  for (int w = 0; w < worlds; ++w) {
    if ((n1[w] | n2[w]) & ~mask) throw Error("neighbourhood contains a set outside the powerset of W");
  }
}

Element denote(const NeighborhoodModel& m, const Formula& f) {
  m.frame.validate();
  return denote_rec(m, SetOps{m.frame.universe().bits}, f);
}

Balfi balfi_from_frame(const NeighborhoodFrame& fr) {
  fr.validate();
  const SetOps w{fr.universe().bits};
  std::vector<Element> neg(fr.subsets()), circ(fr.subsets());
  for (std::uint32_t x = 0; x < fr.subsets(); ++x) {
    const Element X{x};
    neg[x] = w.join(w.compl_(X), fr.s_neg[x]);
    circ[x] = w.meet(w.compl_(w.meet(X, fr.s_neg[x])), fr.s_circ[x]);
  }
  return check_balfi(PowersetAlgebra(fr.worlds), std::move(neg), std::move(circ));
}

NeighborhoodFrame frame_from_balfi(const Balfi& b) {
  const int n = b.algebra().atoms();
  check_worlds(n);
  NeighborhoodFrame fr;
  fr.worlds = n;
  fr.s_neg.assign(b.neg_table().begin(), b.neg_table().end());
  fr.s_circ.assign(b.circ_table().begin(), b.circ_table().end());
  return fr;
}

bool frame_valid_schema(const NeighborhoodFrame& fr, const Schema& s) {
  return models_schema(balfi_from_frame(fr), s);
}

bool frame_condition(const NeighborhoodFrame& fr, AxiomTag tag) {
  fr.validate();
  const SetOps w{fr.universe().bits};
  auto N = [&](Element x) { return fr.s_neg[x.bits]; };
  auto C = [&](Element x) { return fr.s_circ[x.bits]; };
  for (std::uint32_t bits = 0; bits < fr.subsets(); ++bits) {
    const Element X{bits};
    const Element outside = w.compl_(w.meet(X, N(X)));
    bool ok = true;
    switch (tag) {
      case AxiomTag::ciw:
        ok = w.subset(outside, C(X));
        break;
      case AxiomTag::ci: {
        const Element y = w.meet(outside, C(X));
        ok = w.subset(outside, w.meet(C(X), w.compl_(N(y))));
        break;
      }
      case AxiomTag::cl:
        ok = w.subset(N(w.meet(X, N(X))), outside) && w.subset(outside, C(X));
        break;
      case AxiomTag::cf:
      case AxiomTag::ce: {
        const Element nn = w.join(w.meet(X, w.compl_(N(X))), N(w.impl(X, N(X))));
        ok = tag == AxiomTag::cf ? w.subset(nn, X) : w.subset(X, nn);
        break;
      }
      default:
        throw Error(std::string("no frame condition for tag ") + name(tag));
    }
    if (!ok) return false;
  }
  return true;
}

Element denote_bimodal(const MinimalModel& n, const Formula& f) {
  n.validate();
  return bimodal_rec(n, SetOps{static_cast<std::uint32_t>((1u << n.worlds) - 1)}, f);
}

Formula translate(const Formula& f) {
  switch (f.op()) {
    case Connective::Var:
      return f;
    case Connective::ParaNeg: {
      Formula a = translate(f.child());
      return imp(a, box1(a));
    }
    case Connective::Circ: {
      Formula a = translate(f.child());
      return conj(tilde(conj(a, box1(a))), box2(a));
    }
    case Connective::And:
    case Connective::Or:
    case Connective::Imp:
      return Formula::binary(f.op(), translate(f.left()), translate(f.right()));
    default:
      throw SignatureError(spelling(f.op()), name(SignatureId::Sigma));
  }
}

MinimalModel n_from_s(const NeighborhoodFrame& fr) {
  fr.validate();
  MinimalModel n;
  n.worlds = fr.worlds;
  n.n1.assign(fr.worlds, 0);
  n.n2.assign(fr.worlds, 0);
  for (std::uint32_t x = 0; x < fr.subsets(); ++x) {
    for (int w = 0; w < fr.worlds; ++w) {
      if ((fr.s_neg[x].bits >> w) & 1u) n.n1[w] |= std::uint64_t{1} << x;
      if ((fr.s_circ[x].bits >> w) & 1u) n.n2[w] |= std::uint64_t{1} << x;
    }
  }
  return n;
}

NeighborhoodFrame s_from_n(const MinimalModel& n) {
  n.validate();
  NeighborhoodFrame fr;
  fr.worlds = n.worlds;
  fr.s_neg.assign(fr.subsets(), Element{});
  fr.s_circ.assign(fr.subsets(), Element{});
  for (std::uint32_t x = 0; x < fr.subsets(); ++x) {
    for (int w = 0; w < n.worlds; ++w) {
      if ((n.n1[w] >> x) & 1u) fr.s_neg[x].bits |= 1u << w;
      if ((n.n2[w] >> x) & 1u) fr.s_circ[x].bits |= 1u << w;
    }
  }
  return fr;
}

std::size_t sweep_frames(int worlds, unsigned jobs,
                         const std::function<bool(const NeighborhoodFrame&)>& fn) {
  if (worlds < 1 || worlds > 2) throw Error("exhaustive frame sweeps support 1 or 2 worlds");
  const std::size_t subsets = std::size_t{1} << worlds;
  std::size_t maps = 1;
  for (std::size_t i = 0; i < subsets; ++i) maps *= subsets;
  auto decode = [&](std::size_t code) {
    std::vector<Element> out(subsets);
    for (std::size_t i = 0; i < subsets; ++i) {
      out[i] = Element{static_cast<std::uint32_t>(code % subsets)};
      code /= subsets;
    }
    return out;
  };
  std::atomic<std::size_t> next{0}, failures{0};
  auto worker = [&] {
    NeighborhoodFrame fr;
    fr.worlds = worlds;
    for (std::size_t k = next++; k < maps; k = next++) {
      fr.s_neg = decode(k);
      std::size_t local = 0;
      for (std::size_t c = 0; c < maps; ++c) {
        fr.s_circ = decode(c);
        if (!fn(fr)) ++local;
      }
      failures += local;
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(maps)));
  std::vector<std::thread> threads;
  for (unsigned i = 0; i < n_threads; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return failures;
}

}  // namespace balfi
