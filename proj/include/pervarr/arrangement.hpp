#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pervarr/exec.hpp"
#include "pervarr/lp.hpp"
#include "pervarr/matrix.hpp"
#include "pervarr/subspace.hpp"

namespace pervarr {

enum class Sign : signed char { minus = -1, zero = 0, plus = 1 };
using SignVector = std::vector<Sign>;

std::string sign_string(const SignVector& s);
SignVector sign_vector_of_string(const std::string& s);
Sign sign_of_value(const Rat& v);

/// Central arrangement: rational hyperplane normals in dimension dim.
/// Normals must be nonzero and pairwise non-proportional.
struct Arrangement {
  std::size_t dim = 0;
  std::vector<Vec> normals;
};

void validate_arrangement(const Arrangement& arr);

SignVector signs_at(const Arrangement& arr, const Vec& point);

/// Realizable sign vector with an exact witness point.
struct Face {
  SignVector signs;
  Vec witness;
  std::size_t codim = 0;
};

/// Immutable face poset. Faces are sorted by sign string, so indices are
/// deterministic for a given arrangement.
class FacePoset {
 public:
  FacePoset(Arrangement arr, std::vector<Face> faces);

  const Arrangement& arrangement() const { return arr_; }
  std::size_t size() const { return faces_.size(); }
  const Face& face(std::size_t i) const { return faces_[i]; }
  std::string face_name(std::size_t i) const { return sign_string(faces_[i].signs); }
  std::size_t zero_face() const { return zero_face_; }
  const std::vector<std::size_t>& chambers() const { return chambers_; }
  bool is_chamber(std::size_t i) const;

  std::size_t index_of(const SignVector& s) const;  // throws InputError
  std::optional<std::size_t> find(const SignVector& s) const;

  /// Covector closure order: a <= b iff signs(a)_H in {0, signs(b)_H} per H.
  bool leq(std::size_t a, std::size_t b) const;

  /// Wall of an opposing pair (codim one higher than both faces), if the
  /// pair opposes; nullopt otherwise.
  std::optional<std::size_t> wall_between(std::size_t a, std::size_t b) const;
  const std::vector<std::pair<std::size_t, std::size_t>>& opposing_pairs() const {
    return opposing_pairs_;
  }

  const std::vector<std::size_t>& codim2_faces() const { return codim2_faces_; }

  /// Chambers adjacent to the given chamber (opposing through a wall).
  std::vector<std::size_t> chamber_neighbors(std::size_t chamber) const;

 private:
  Arrangement arr_;
  std::vector<Face> faces_;
  std::map<std::string, std::size_t> index_;
  std::size_t zero_face_ = 0;
  std::vector<std::size_t> chambers_;
  std::vector<std::size_t> codim2_faces_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> wall_;
  std::vector<std::pair<std::size_t, std::size_t>> opposing_pairs_;
};

/// Incremental hyperplane insertion with exact strict-LP feasibility.
FacePoset enumerate_faces(const Arrangement& arr);

/// Exact decision of "some segment meets A, then B, then C": for central
/// arrangements this is feasibility of a in A, c in C, a + c in B.
bool collinear(const FacePoset& poset, std::size_t a, std::size_t b,
               std::size_t c);

/// All ordered triples at once; the sweep is embarrassingly parallel.
class CollinearTable {
 public:
  CollinearTable(const FacePoset& poset, Exec exec = default_exec);
  bool operator()(std::size_t a, std::size_t b, std::size_t c) const;
  std::size_t count_true() const;
  bool operator==(const CollinearTable& o) const { return table_ == o.table_; }

 private:
  std::size_t n_;
  std::vector<char> table_;
};

/// Tits composition: sign of C where nonzero, else sign of Q. The result is
/// checked against an epsilon-witness before returning.
std::size_t compose(const FacePoset& poset, std::size_t c, std::size_t q);

/// Returns the wall if a and b oppose (equal spans, opposite sides of a
/// common face of one higher codimension).
std::optional<std::size_t> opposes(const FacePoset& poset, std::size_t a,
                                   std::size_t b);

/// Chambers around a codimension-2 face in cyclic order; consecutive entries
/// oppose through walls containing the face. Throws NotCodim2Error.
std::vector<std::size_t> codim2_cycle(const FacePoset& poset, std::size_t f);

struct Flat {
  std::vector<std::size_t> hyperplanes;  // generating subset, sorted
  Subspace space;                        // intersection of those hyperplanes
};

Flat flat_from(const Arrangement& arr, std::vector<std::size_t> hyperplanes);

/// Hyperplanes of arr that contain the flat (may be more than the
/// generating subset).
std::vector<std::size_t> containing_hyperplanes(const Arrangement& arr,
                                                const Flat& flat);

/// Restriction of the arrangement to a flat Z plus the embedding of the
/// restricted face poset onto C_Z = {C : C inside Z}.
struct Restriction {
  Flat flat;
  Matrix basis;  // dim x d, columns identify Z-coordinates with points of Z
  Arrangement restricted;
  FacePoset poset_z;
  std::vector<std::size_t> to_ambient;            // face of poset_z -> face of C
  std::map<std::size_t, std::size_t> from_ambient;  // inverse, domain C_Z
};

Restriction flats_and_restriction(const FacePoset& poset, const Flat& flat);

/// Faces lying inside the flat: signs vanish at every containing hyperplane.
std::vector<std::size_t> faces_in_flat(const FacePoset& poset, const Flat& flat);

}  // namespace pervarr
