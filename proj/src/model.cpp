#include "lindfrag/model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lindfrag {

namespace {

bool hermitian_involution(const PauliString& p) {
  return p.is_hermitian() && (p.sign_exp() == 0 || p.sign_exp() == 2);
}

}  // namespace

ValidationReport validate(const LindbladModel& model) {
  ValidationReport rep;
  if (model.n_qubits <= 0) {
    rep.errors.push_back("n_qubits must be positive");
    return rep;
  }
  for (std::size_t i = 0; i < model.hamiltonian.size(); ++i) {
    const auto& t = model.hamiltonian[i];
    if (t.string.n_qubits() != model.n_qubits)
      rep.errors.push_back("hamiltonian term " + std::to_string(i) + ": length mismatch");
    else if (!hermitian_involution(t.string))
      rep.errors.push_back("hamiltonian term " + std::to_string(i) +
                           ": not Hermitian with square one");
  }
  for (std::size_t i = 0; i < model.jumps.size(); ++i) {
    const auto& j = model.jumps[i];
    if (j.string.n_qubits() != model.n_qubits)
      rep.errors.push_back("jump " + std::to_string(i) + ": length mismatch");
    else if (!hermitian_involution(j.string))
      rep.errors.push_back("jump " + std::to_string(i) + ": not Hermitian with square one");
    if (j.rate < 0) rep.errors.push_back("jump " + std::to_string(i) + ": negative rate");
  }
  if (!rep.errors.empty()) return rep;
  for (std::size_t i = 0; i < model.hamiltonian.size(); ++i)
    for (std::size_t j = i + 1; j < model.hamiltonian.size(); ++j)
      if (anticommutes(model.hamiltonian[i].string, model.hamiltonian[j].string))
        rep.errors.push_back("hamiltonian terms " + std::to_string(i) + " and " +
                             std::to_string(j) + " anticommute");
  bool any_noncommuting = model.jumps.empty() || model.hamiltonian.empty();
  for (const auto& j : model.jumps)
    for (const auto& t : model.hamiltonian)
      if (anticommutes(j.string, t.string)) any_noncommuting = true;
  if (!any_noncommuting)
    rep.warnings.push_back("every jump commutes with every hamiltonian term: trivially solvable");
  return rep;
}

std::vector<int> TildeModel::generator_sites() const {
  std::vector<int> out;
  for (int s = 0; s < base.n_qubits; ++s)
    if (is_generator_site[s]) out.push_back(s);
  return out;
}

std::vector<int> TildeModel::free_sites() const {
  std::vector<int> out;
  for (int s = 0; s < base.n_qubits; ++s)
    if (!is_generator_site[s]) out.push_back(s);
  return out;
}

TildeModel to_tilde(const LindbladModel& model) {
  {
    const auto rep = validate(model);
    if (!rep.ok()) throw std::invalid_argument("to_tilde: invalid model: " + rep.errors.front());
  }
  const int n = model.n_qubits;

  // Column order for pivots: X-parts of all sites first, then Z-parts.
  auto bit_at = [n](const PauliString& p, int col) {
    return col < n ? p.x(col) : p.z(col - n);
  };
  auto first_set = [&](const PauliString& p) {
    for (int c = 0; c < 2 * n; ++c)
      if (bit_at(p, c)) return c;
    return -1;
  };

  // Forward Gaussian elimination over the Hamiltonian term strings; reduced
  // nonzero strings become the generators.
  struct Gen {
    PauliString string;
    int pivot;
    int site = -1;
  };
  std::vector<Gen> gens;
  std::vector<std::vector<std::uint8_t>> used(model.hamiltonian.size());
  for (std::size_t t = 0; t < model.hamiltonian.size(); ++t) {
    PauliString cur = model.hamiltonian[t].string.canonical();
    std::vector<std::uint8_t> coords(gens.size(), 0);
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (bit_at(cur, gens[g].pivot)) {
        cur = multiply(cur, gens[g].string);
        coords[g] = 1;
      }
    if (!cur.is_identity_bits()) {
      coords.push_back(1);
      gens.push_back({cur.canonical(), first_set(cur), -1});
    }
    used[t] = std::move(coords);
  }
  const int M = static_cast<int>(gens.size());

  // Assign tilde sites: pivot site when free, else smallest unused site.
  std::vector<bool> site_taken(n, false);
  for (auto& g : gens) {
    const int want = g.pivot % n;
    if (!site_taken[want]) {
      g.site = want;
      site_taken[want] = true;
    }
  }
  for (auto& g : gens)
    if (g.site < 0)
      for (int s = 0; s < n; ++s)
        if (!site_taken[s]) {
          g.site = s;
          site_taken[s] = true;
          break;
        }

  // Process generators in ascending tilde site for deterministic destabilizers.
  std::vector<int> order(gens.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return gens[a].site < gens[b].site; });

  // Symplectic Gram-Schmidt over the single-site pool completes the basis.
  std::vector<PauliString> pool;
  for (int s = 0; s < n; ++s) pool.push_back(PauliString::single(n, s, 'Z'));
  for (int s = 0; s < n; ++s) pool.push_back(PauliString::single(n, s, 'X'));

  SymplecticMap to_physical;
  to_physical.n_qubits = n;
  to_physical.image_x.assign(n, PauliString::identity(n));
  to_physical.image_z.assign(n, PauliString::identity(n));

  auto reduce_pool = [&](const PauliString& g, const PauliString& d) {
    std::vector<PauliString> next;
    for (auto& q : pool) {
      PauliString r = q;
      if (anticommutes(r, g)) r = multiply(r, d);
      if (anticommutes(r, d)) r = multiply(r, g);
      if (!r.is_identity_bits()) next.push_back(r.canonical());
    }
    pool = std::move(next);
  };

  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const Gen& g = gens[order[oi]];
    // Destabilizer: first pool element conjugate to g and commuting with the
    // generators not yet processed.
    int found = -1;
    for (std::size_t p = 0; p < pool.size(); ++p) {
      if (!anticommutes(pool[p], g.string)) continue;
      bool clean = true;
      for (std::size_t oj = oi + 1; oj < order.size(); ++oj)
        if (anticommutes(pool[p], gens[order[oj]].string)) {
          clean = false;
          break;
        }
      if (clean) {
        found = static_cast<int>(p);
        break;
      }
    }
    PauliString d = PauliString::identity(n);
    if (found >= 0) {
      d = pool[found];
      pool.erase(pool.begin() + found);
    } else {
      // No single pool element works: solve over GF(2) for a product of pool
      // elements whose pairing syndrome is 1 on g and 0 on the later
      // generators. Earlier pairs are already cleared by pool reduction.
      const std::size_t m_rem = order.size() - oi;
      auto syndrome = [&](const PauliString& q) {
        std::vector<std::uint8_t> s(m_rem);
        for (std::size_t oj = oi; oj < order.size(); ++oj)
          s[oj - oi] = anticommutes(q, gens[order[oj]].string);
        return s;
      };
      std::vector<std::pair<std::vector<std::uint8_t>, PauliString>> basis;
      for (const auto& q : pool) {
        auto s = syndrome(q);
        PauliString elem = q;
        for (const auto& row : basis) {
          std::size_t piv = 0;
          while (piv < m_rem && !row.first[piv]) ++piv;
          if (piv < m_rem && s[piv]) {
            for (std::size_t b = 0; b < m_rem; ++b) s[b] ^= row.first[b];
            elem = multiply(elem, row.second);
          }
        }
        if (std::find(s.begin(), s.end(), 1) != s.end()) basis.emplace_back(s, elem);
      }
      std::vector<std::uint8_t> target(m_rem, 0);
      target[0] = 1;
      for (const auto& row : basis) {
        std::size_t piv = 0;
        while (piv < m_rem && !row.first[piv]) ++piv;
        if (piv < m_rem && target[piv]) {
          for (std::size_t b = 0; b < m_rem; ++b) target[b] ^= row.first[b];
          d = multiply(d, row.second);
        }
      }
      if (std::find(target.begin(), target.end(), 1) != target.end() || d.is_identity_bits())
        throw std::runtime_error("to_tilde: no destabilizer found");
    }
    d = d.canonical();
    to_physical.image_z[g.site] = g.string;
    to_physical.image_x[g.site] = d;
    reduce_pool(g.string, d);
  }

  // Free pairs on the unassigned sites, ascending.
  for (int s = 0; s < n; ++s) {
    if (site_taken[s]) continue;
    if (pool.empty()) throw std::runtime_error("to_tilde: pool exhausted");
    PauliString x_img = pool.front().canonical();
    pool.erase(pool.begin());
    int partner = -1;
    for (std::size_t p = 0; p < pool.size(); ++p)
      if (anticommutes(pool[p], x_img)) {
        partner = static_cast<int>(p);
        break;
      }
    if (partner < 0) throw std::runtime_error("to_tilde: no symplectic partner");
    PauliString z_img = pool[partner].canonical();
    pool.erase(pool.begin() + partner);
    to_physical.image_x[s] = x_img;
    to_physical.image_z[s] = z_img;
    reduce_pool(x_img, z_img);
  }

  TildeModel tm;
  tm.n_generators = M;
  tm.is_generator_site.assign(n, false);
  for (const auto& g : gens) tm.is_generator_site[g.site] = true;
  tm.to_physical = to_physical;
  tm.map = to_physical.inverse();

  tm.base.n_qubits = n;
  tm.base.basis = Basis::tilde;
  for (std::size_t t = 0; t < model.hamiltonian.size(); ++t) {
    PauliString img = tm.map.apply(model.hamiltonian[t].string);
    double coeff = model.hamiltonian[t].coeff;
    if (img.sign_exp() == 2) {
      coeff = -coeff;
      img = img.canonical();
    }
    if (img.sign_exp() != 0) throw std::runtime_error("to_tilde: non-real hamiltonian image");
    tm.base.hamiltonian.push_back({coeff, img});
    std::vector<std::uint8_t> expo(n, 0);
    for (std::size_t g = 0; g < used[t].size() && g < gens.size(); ++g)
      if (used[t][g]) expo[gens[g].site] ^= 1;
    tm.term_exponents.push_back(std::move(expo));
  }
  for (const auto& j : model.jumps) tm.base.jumps.push_back({j.rate, tm.map.apply(j.string)});
  return tm;
}

LindbladModel builtin_model(const std::string& name, int n_qubits, double J, double kappa) {
  if (name != "cluster_y" && name != "cluster_ziz")
    throw std::invalid_argument("builtin_model: unknown name " + name);
  if (n_qubits < 4) throw std::invalid_argument("builtin_model: n_qubits must be >= 4");
  LindbladModel m;
  m.n_qubits = n_qubits;
  for (int l = 1; l + 1 < n_qubits; ++l) {
    PauliString t(n_qubits);
    t.set_letter(l - 1, 'Z');
    t.set_letter(l, 'X');
    t.set_letter(l + 1, 'Z');
    m.hamiltonian.push_back({J, t});
  }
  if (name == "cluster_y") {
    for (int j = 0; j < n_qubits; ++j)
      m.jumps.push_back({kappa, PauliString::single(n_qubits, j, 'Y')});
  } else {
    for (int j = 1; j + 1 < n_qubits; ++j) {
      PauliString f(n_qubits);
      f.set_letter(j - 1, 'Z');
      f.set_letter(j + 1, 'Z');
      m.jumps.push_back({kappa, f});
    }
  }
  return m;
}

namespace {

LindbladModel model_from_json(const nlohmann::json& j) {
  if (j.contains("builtin")) {
    const auto& b = j.at("builtin");
    return builtin_model(b.at("name").get<std::string>(), b.at("n").get<int>(),
                         b.value("J", 1.0), b.value("kappa", 1.0));
  }
  LindbladModel m;
  m.n_qubits = j.at("n_qubits").get<int>();
  for (const auto& t : j.value("hamiltonian", nlohmann::json::array()))
    m.hamiltonian.push_back(
        {t.at("coeff").get<double>(), PauliString::parse(t.at("pauli").get<std::string>())});
  for (const auto& t : j.value("jumps", nlohmann::json::array()))
    m.jumps.push_back(
        {t.at("rate").get<double>(), PauliString::parse(t.at("pauli").get<std::string>())});
  return m;
}

}  // namespace

LindbladModel model_from_json_text(const std::string& text) {
  return model_from_json(nlohmann::json::parse(text));
}

LindbladModel model_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json_text(ss.str());
}

}  // namespace lindfrag
