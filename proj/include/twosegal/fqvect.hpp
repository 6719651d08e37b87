#pragma once

// Dense linear algebra over prime fields F_q: reduced echelon forms, canonical
// cokernels, and the deterministic enumerations (matrices, invertibles,
// subspaces, forms) that the counting oracles quantify over.

#include <string>
#include <vector>

namespace twosegal {

// A rows x cols matrix over the integers mod q, row-major.  Read as the
// linear map F_q^cols -> F_q^rows on column vectors, so "f then g" is g * f.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<int> a;

  Mat() = default;
  Mat(int rows, int cols);
  Mat(int rows, int cols, std::vector<int> entries);

  int& at(int i, int j) { return a[static_cast<size_t>(i * cols + j)]; }
  int at(int i, int j) const { return a[static_cast<size_t>(i * cols + j)]; }

  bool operator==(const Mat&) const = default;
  auto operator<=>(const Mat&) const = default;
};

Mat mat_identity(int n);
Mat mat_mul(int q, const Mat& a, const Mat& b);  // the product a.b
Mat mat_add(int q, const Mat& a, const Mat& b);
Mat transpose(const Mat& m);

struct EchelonForm {
  Mat reduced;
  std::vector<int> pivots;  // pivot column of each leading row
  int rank = 0;
};

EchelonForm reduced_echelon(int q, const Mat& m);
int rank(int q, const Mat& m);
bool is_injective(int q, const Mat& m);
bool is_invertible(int q, const Mat& m);
Mat inverse(int q, const Mat& m);  // throws when singular

// Basis of {x : m x = 0} as the rows of a reduced-echelon matrix.
Mat kernel_basis(int q, const Mat& m);

// Columnwise solution of m x = rhs; throws when any column is inconsistent.
// Free coordinates are set to zero, so the result is deterministic.
Mat solve(int q, const Mat& m, const Mat& rhs);

// The canonical quotient of an injective mono : F^a -> F^c.  proj is the
// (c-a) x c projection along the image, pinned by the reduced-echelon basis
// of the image so that equal images yield equal projections; section is the
// right inverse supported on the non-pivot coordinates.  An iso has the 0 x c
// quotient.  For any square w.mono = mono'.u the induced map on quotients is
// proj' . w . section, and satisfies (proj'.w.section).proj = proj'.w.
struct CanonicalQuotient {
  Mat proj;     // (c-a) x c, full rank, proj.mono = 0
  Mat section;  // c x (c-a), proj.section = identity
};

CanonicalQuotient canonical_cokernel(int q, const Mat& mono);

// Deterministic lexicographic enumerations.
std::vector<Mat> enumerate_matrices(int q, int rows, int cols);
std::vector<Mat> enumerate_injective(int q, int rows, int cols);
std::vector<Mat> enumerate_invertible(int q, int n);
// Subspaces of F_q^n of dimension k as reduced-echelon row bases.
std::vector<Mat> enumerate_subspace_bases(int q, int n, int k);
std::vector<Mat> enumerate_symmetric_invertible(int q, int n);

// Compact payload form "RxC:entries" with one digit per entry (needs q <= 10);
// lists join with ';'.  Used to feed matrices through assembler payloads.
std::string to_payload(const Mat& m);
Mat mat_from_payload(const std::string& s);
std::string to_payload(const std::vector<Mat>& ms);
std::vector<Mat> mats_from_payload(const std::string& s);

std::string to_string(const Mat& m);

}  // namespace twosegal
