#include "pervarr/salvetti.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "pervarr/error.hpp"

namespace pervarr {

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back({it->tgt, it->src, !it->positive});
  return out;
}

namespace {

void check_word(const FacePoset& poset, const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!poset.wall_between(w[i].src, w[i].tgt))
      throw InputError("word letter on a non-opposing pair");
    if (i + 1 < w.size() && w[i].tgt != w[i + 1].src)
      throw InputError("word letters not composable");
  }
}

}  // namespace

Presentation salvetti_presentation(const FacePoset& poset, std::size_t base) {
  if (!poset.is_chamber(base))
    throw InputError("salvetti base must be a chamber");
  Presentation pres;
  pres.base = base;

  for (std::size_t a : poset.chambers())
    for (std::size_t b : poset.chambers())
      if (a != b && poset.wall_between(a, b)) pres.generators.emplace_back(a, b);
  std::sort(pres.generators.begin(), pres.generators.end());

  // One Zifferblatt relation per (codim-2 face, start chamber of its cycle).
  for (std::size_t f : poset.codim2_faces()) {
    auto cycle = codim2_cycle(poset, f);
    const std::size_t two_m = cycle.size(), m = two_m / 2;
    for (std::size_t p = 0; p < two_m; ++p) {
      ZifferblattRelation rel;
      rel.codim2_face = f;
      rel.start_chamber = cycle[p];
      for (std::size_t i = 0; i < m; ++i)
        rel.lhs.push_back(
            {cycle[(p + i) % two_m], cycle[(p + i + 1) % two_m], true});
      for (std::size_t i = 0; i < m; ++i)
        rel.rhs.push_back({cycle[(p + two_m - i) % two_m],
                           cycle[(p + two_m - i - 1) % two_m], true});
      pres.relations.push_back(std::move(rel));
    }
  }
  std::sort(pres.relations.begin(), pres.relations.end(),
            [](const ZifferblattRelation& a, const ZifferblattRelation& b) {
              return std::tie(a.codim2_face, a.start_chamber) <
                     std::tie(b.codim2_face, b.start_chamber);
            });

  // Spanning tree of the chamber adjacency graph (BFS from base, neighbors
  // in index order).
  std::map<std::size_t, std::size_t> parent;
  std::vector<std::size_t> queue{base};
  parent[base] = base;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t c = queue[qi];
    for (std::size_t d : poset.chamber_neighbors(c))
      if (!parent.count(d)) {
        parent[d] = c;
        queue.push_back(d);
      }
  }
  if (parent.size() != poset.chambers().size())
    throw Error("chamber adjacency graph is disconnected");

  auto path_from_base = [&](std::size_t c) {
    Word w;
    while (c != base) {
      w.push_back({parent[c], c, true});
      c = parent[c];
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  // Loop generators: every directed adjacency except tree edges in their
  // canonical (parent -> child) direction, conjugated back to base. Reverse
  // tree edges contribute the double-crossing loops.
  for (const auto& [a, b] : pres.generators) {
    if (parent.count(b) && parent[b] == a) continue;
    Word w = path_from_base(a);
    w.push_back({a, b, true});
    Word back = inverse_word(path_from_base(b));
    w.insert(w.end(), back.begin(), back.end());
    pres.pi1_generators.push_back(std::move(w));
  }
  return pres;
}

Matrix letter_matrix(const RModule& m, const Letter& l) {
  if (!m.poset().wall_between(l.src, l.tgt))
    throw InputError("letter on a non-opposing pair");
  if (l.positive) return m.act[l.tgt] * m.act[l.src];
  return m.act[l.tgt] * m.s(l.tgt, l.src);
}

Matrix evaluate_word(const RModule& m, const Word& w) {
  check_word(m.poset(), w);
  Matrix result = Matrix::identity(m.dim);
  for (const Letter& l : w) result = letter_matrix(m, l) * result;
  return result;
}

ZifferblattReport check_zifferblatt(const RModule& m, const Presentation& pres) {
  ZifferblattReport rep;
  for (const auto& rel : pres.relations) {
    if (!(evaluate_word(m, rel.lhs) == evaluate_word(m, rel.rhs)))
      rep.failures.push_back(
          "zifferblatt relation fails at face " +
          m.poset().face_name(rel.codim2_face) + " starting at chamber " +
          m.poset().face_name(rel.start_chamber));
  }
  return rep;
}

ZifferblattReport check_zifferblatt(const RModule& m) {
  const auto& chambers = m.poset().chambers();
  if (chambers.empty()) return {};
  return check_zifferblatt(m, salvetti_presentation(m.poset(), chambers.front()));
}

std::string word_to_text(const FacePoset& poset, const Word& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << " ";
    os << (w[i].positive ? "psi(" : "psi-(") << poset.face_name(w[i].src)
       << "->" << poset.face_name(w[i].tgt) << ")";
  }
  return os.str();
}

std::string presentation_to_text(const FacePoset& poset, const Presentation& p) {
  std::ostringstream os;
  os << "base " << poset.face_name(p.base) << "\n";
  os << "generators " << p.generators.size() << "\n";
  for (const auto& [a, b] : p.generators)
    os << "psi(" << poset.face_name(a) << "->" << poset.face_name(b) << ")\n";
  os << "relations " << p.relations.size() << "\n";
  for (const auto& rel : p.relations)
    os << word_to_text(poset, rel.lhs) << " = " << word_to_text(poset, rel.rhs)
       << "\n";
  os << "pi1-generators " << p.pi1_generators.size() << "\n";
  for (const auto& w : p.pi1_generators)
    os << word_to_text(poset, w) << "\n";
  return os.str();
}

}  // namespace pervarr
