#include "sepkit/lattice.hpp"

#include <utility>

#include "sepkit/error.hpp"

namespace sepkit {

  namespace {
    // Extended gcd with g >= 0: g = x*a + y*b.
    void ext_gcd(BigInt const& a, BigInt const& b, BigInt& g, BigInt& x, BigInt& y) {
      BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
      while (r != 0) {
        BigInt q   = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r      = r;
        r          = tmp;
        tmp        = old_s - q * s;
        old_s      = s;
        s          = tmp;
        tmp        = old_t - q * t;
        old_t      = t;
        t          = tmp;
      }
      if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
      }
      g = old_r;
      x = old_s;
      y = old_t;
    }

    BigInt floor_div(BigInt const& a, BigInt const& b) {
      BigInt q = a / b;  // truncates toward zero
      if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
      }
      return q;
    }
  }  // namespace

  IntMatrix hermite_normal_form(IntMatrix A, std::size_t dim) {
    for (auto const& row : A) {
      if (row.size() != dim) {
        throw ArgumentError("hermite_normal_form: row length mismatch");
      }
    }
    std::size_t const r     = A.size();
    std::size_t       pivot = 0;
    for (std::size_t col = 0; col < dim && pivot < r; ++col) {
      // Fold every lower row into the pivot row with unimodular 2x2 steps.
      for (std::size_t i = pivot + 1; i < r; ++i) {
        if (A[i][col] == 0) {
          continue;
        }
        if (A[pivot][col] == 0) {
          std::swap(A[pivot], A[i]);
          continue;
        }
        BigInt g, x, y;
        ext_gcd(A[pivot][col], A[i][col], g, x, y);
        BigInt const a = A[pivot][col] / g, b = A[i][col] / g;
        for (std::size_t c = col; c < dim; ++c) {
          BigInt const p = A[pivot][c], q = A[i][c];
          A[pivot][c]    = x * p + y * q;
          A[i][c]        = -b * p + a * q;
        }
      }
      if (A[pivot][col] == 0) {
        continue;
      }
      if (A[pivot][col] < 0) {
        for (std::size_t c = col; c < dim; ++c) {
          A[pivot][c] = -A[pivot][c];
        }
      }
      for (std::size_t i = 0; i < pivot; ++i) {
        BigInt const q = floor_div(A[i][col], A[pivot][col]);
        if (q != 0) {
          for (std::size_t c = col; c < dim; ++c) {
            A[i][c] -= q * A[pivot][c];
          }
        }
      }
      ++pivot;
    }
    A.resize(pivot);
    return A;
  }

  IntMatrix integer_kernel(IntMatrix const& rows, std::size_t dim) {
    // Reduce [rows^T | I]; rows whose left block vanishes span the kernel.
    std::size_t const r = rows.size();
    IntMatrix         aug(dim, IntVector(r + dim, 0));
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != dim) {
          throw ArgumentError("integer_kernel: row length mismatch");
        }
        aug[j][i] = rows[i][j];
      }
      aug[j][r + j] = 1;
    }
    auto      H = hermite_normal_form(std::move(aug), r + dim);
    IntMatrix kernel;
    for (auto const& row : H) {
      bool left_zero = true;
      for (std::size_t i = 0; i < r && left_zero; ++i) {
        left_zero = row[i] == 0;
      }
      if (left_zero) {
        kernel.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(r), row.end());
      }
    }
    return hermite_normal_form(std::move(kernel), dim);
  }

  bool in_lattice(IntMatrix const& rows, IntVector const& v, std::size_t dim) {
    auto H    = hermite_normal_form(rows, dim);
    auto rest = v;
    if (rest.size() != dim) {
      throw ArgumentError("in_lattice: vector length mismatch");
    }
    // Pivots strictly move right, so reduce greedily column by column.
    for (auto const& row : H) {
      std::size_t c = 0;
      while (row[c] == 0) {
        ++c;
      }
      for (std::size_t k = 0; k < c; ++k) {
        if (rest[k] != 0) {
          return false;
        }
      }
      if (rest[c] % row[c] != 0) {
        return false;
      }
      BigInt const q = rest[c] / row[c];
      for (std::size_t k = c; k < dim; ++k) {
        rest[k] -= q * row[k];
      }
    }
    for (auto const& x : rest) {
      if (x != 0) {
        return false;
      }
    }
    return true;
  }

  BigInt dot(IntVector const& a, IntVector const& b) {
    if (a.size() != b.size()) {
      throw ArgumentError("dot: length mismatch");
    }
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      s += a[i] * b[i];
    }
    return s;
  }

  IntVector to_int_vector(std::vector<std::int64_t> const& v) {
    IntVector out;
    out.reserve(v.size());
    for (auto x : v) {
      out.emplace_back(x);
    }
    return out;
  }

}  // namespace sepkit
