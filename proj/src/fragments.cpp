#include "lindfrag/fragments.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace lindfrag {

char site_label_char(SiteLabel l) {
  switch (l) {
    case SiteLabel::Frozen_I: return 'i';
    case SiteLabel::Frozen_Z: return 'z';
    case SiteLabel::Active: return 'a';
    case SiteLabel::Free_I: return 'I';
    case SiteLabel::Free_X: return 'X';
    case SiteLabel::Free_Y: return 'Y';
    case SiteLabel::Free_Z: return 'Z';
  }
  return '?';
}

std::string Fragment::label_string() const {
  std::string s;
  for (const auto l : labels) s.push_back(site_label_char(l));
  return s;
}

bool all_terms_single_generator(const TildeModel& model) {
  for (const auto& e : model.term_exponents) {
    int w = 0;
    for (const auto b : e) w += b;
    if (w != 1) return false;
  }
  return true;
}

namespace {

Fragment label_fragment(const TildeModel& model, const PauliString& seed) {
  const int n = model.base.n_qubits;
  Fragment f;
  f.labels.resize(n);
  for (int s = 0; s < n; ++s) {
    const char c = seed.letter(s);
    if (model.is_generator_site[s]) {
      if (c == 'I')
        f.labels[s] = SiteLabel::Frozen_I;
      else if (c == 'Z')
        f.labels[s] = SiteLabel::Frozen_Z;
      else {
        f.labels[s] = SiteLabel::Active;
        f.active_sites.push_back(s);
      }
    } else {
      switch (c) {
        case 'I': f.labels[s] = SiteLabel::Free_I; break;
        case 'X': f.labels[s] = SiteLabel::Free_X; break;
        case 'Y': f.labels[s] = SiteLabel::Free_Y; break;
        default: f.labels[s] = SiteLabel::Free_Z; break;
      }
    }
  }
  f.dim = std::uint64_t{1} << f.active_sites.size();
  return f;
}

}  // namespace

Fragment fragment_of(const TildeModel& model, const PauliString& seed) {
  if (seed.n_qubits() != model.base.n_qubits)
    throw std::invalid_argument("fragment_of: seed dimension mismatch");
  if (all_terms_single_generator(model)) return label_fragment(model, seed);

  // General path: breadth-first closure under the commutator actions. The
  // dissipators are diagonal, so only Hamiltonian terms move basis strings.
  std::map<std::uint64_t, PauliString> seen;
  std::vector<PauliString> queue{seed.canonical()};
  seen.emplace(queue.front().lex_key(), queue.front());
  while (!queue.empty()) {
    const PauliString cur = queue.back();
    queue.pop_back();
    for (const auto& t : model.base.hamiltonian) {
      if (!anticommutes(t.string, cur)) continue;
      PauliString nxt = multiply(t.string, cur).canonical();
      if (seen.emplace(nxt.lex_key(), nxt).second) queue.push_back(nxt);
    }
  }
  Fragment f;
  for (auto& [key, str] : seen) f.basis.push_back(str);
  f.dim = f.basis.size();
  return f;
}

bool fragment_contains(const Fragment& frag, const PauliString& tilde_string) {
  if (frag.has_explicit_basis()) {
    for (const auto& b : frag.basis)
      if (b.same_bits(tilde_string)) return true;
    return false;
  }
  for (std::size_t s = 0; s < frag.labels.size(); ++s) {
    const char c = tilde_string.letter(static_cast<int>(s));
    switch (frag.labels[s]) {
      case SiteLabel::Frozen_I:
      case SiteLabel::Free_I:
        if (c != 'I') return false;
        break;
      case SiteLabel::Frozen_Z:
      case SiteLabel::Free_Z:
        if (c != 'Z') return false;
        break;
      case SiteLabel::Active:
        if (c != 'X' && c != 'Y') return false;
        break;
      case SiteLabel::Free_X:
        if (c != 'X') return false;
        break;
      case SiteLabel::Free_Y:
        if (c != 'Y') return false;
        break;
    }
  }
  return true;
}

std::vector<PauliString> fragment_members(const TildeModel& model, const Fragment& frag) {
  if (frag.has_explicit_basis()) return frag.basis;
  const int n = model.base.n_qubits;
  std::vector<PauliString> out;
  out.reserve(frag.dim);
  const std::size_t k = frag.active_sites.size();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    PauliString p(n);
    for (int s = 0; s < n; ++s) {
      switch (frag.labels[s]) {
        case SiteLabel::Frozen_Z:
        case SiteLabel::Free_Z: p.set_letter(s, 'Z'); break;
        case SiteLabel::Free_X: p.set_letter(s, 'X'); break;
        case SiteLabel::Free_Y: p.set_letter(s, 'Y'); break;
        default: break;
      }
    }
    for (std::size_t a = 0; a < k; ++a)
      p.set_letter(frag.active_sites[a], (m >> (k - 1 - a)) & 1 ? 'Y' : 'X');
    out.push_back(p.canonical());
  }
  std::sort(out.begin(), out.end(),
            [](const PauliString& a, const PauliString& b) { return a.lex_key() < b.lex_key(); });
  return out;
}

FragmentEnumerator::FragmentEnumerator(const TildeModel& model) : model_(&model) {
  if (!all_terms_single_generator(model))
    throw std::invalid_argument(
        "enumerate_fragments: multi-generator terms present; use fragment_of reachability");
  state_.assign(model.base.n_qubits, 0);
}

bool FragmentEnumerator::next(Fragment& out) {
  if (done_) return false;
  const int n = model_->base.n_qubits;
  out.labels.resize(n);
  out.active_sites.clear();
  out.basis.clear();
  for (int s = 0; s < n; ++s) {
    if (model_->is_generator_site[s]) {
      static const SiteLabel gen_labels[] = {SiteLabel::Frozen_I, SiteLabel::Frozen_Z,
                                             SiteLabel::Active};
      out.labels[s] = gen_labels[state_[s]];
      if (out.labels[s] == SiteLabel::Active) out.active_sites.push_back(s);
    } else {
      static const SiteLabel free_labels[] = {SiteLabel::Free_I, SiteLabel::Free_X,
                                              SiteLabel::Free_Y, SiteLabel::Free_Z};
      out.labels[s] = free_labels[state_[s]];
    }
  }
  out.dim = std::uint64_t{1} << out.active_sites.size();
  // Odometer step, least significant at the last site.
  int s = n - 1;
  for (; s >= 0; --s) {
    const int radix = model_->is_generator_site[s] ? 3 : 4;
    if (++state_[s] < radix) break;
    state_[s] = 0;
  }
  if (s < 0) done_ = true;
  return true;
}

std::map<int, std::uint64_t> count_by_size(const TildeModel& model) {
  if (!all_terms_single_generator(model))
    throw std::invalid_argument("count_by_size: multi-generator terms present");
  const int M = model.n_generators;
  const int n_free = model.base.n_qubits - M;
  std::uint64_t free_factor = 1;
  for (int i = 0; i < n_free; ++i) free_factor *= 4;
  std::map<int, std::uint64_t> out;
  for (int k = 0; k <= M; ++k) {
    std::uint64_t binom = 1;
    for (int i = 0; i < k; ++i) binom = binom * (M - i) / (i + 1);
    out[k] = binom * (std::uint64_t{1} << (M - k)) * free_factor;
  }
  return out;
}

std::uint64_t total_fragment_count(const TildeModel& model) {
  std::uint64_t total = 0;
  for (const auto& [k, c] : count_by_size(model)) total += c;
  return total;
}

}  // namespace lindfrag
