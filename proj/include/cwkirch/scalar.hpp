#ifndef CWKIRCH_SCALAR_HPP
#define CWKIRCH_SCALAR_HPP

// Exact scalar types and the dense Eigen containers built on them.
//
// Everything in this library is an exact identity, so the only scalars are
// arbitrary-precision integers and rationals (GMP via Boost.Multiprecision).
// Expression templates are switched off on the multiprecision side so that
// Eigen's own expression templates are the only lazy layer.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace cwk {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = Vector<Integer>;
using RatVector = Vector<Rational>;

using Index = Eigen::Index;

/// Lowest-terms "p/q" text, or "n" for integers.
std::string to_string(const Rational& q);
std::string to_string(const Integer& n);

/// Parses "n", "-n" or "p/q" (q != 0). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

inline bool is_integral(const Rational& q) { return mp::denominator(q) == 1; }

/// Throws std::domain_error unless q is an integer.
Integer to_integer(const Rational& q);

/// q^e for natural e.
Rational pow(const Rational& q, unsigned e);

inline RatMatrix to_rational(const IntMatrix& m) { return m.cast<Rational>(); }
inline RatVector to_rational(const IntVector& v) { return v.cast<Rational>(); }

/// Exact integer matrix from a rational one; throws std::domain_error on a
/// non-integral entry.
IntMatrix to_integer(const RatMatrix& m);

/// Columns `cols` of m, in the given order.
template <typename Derived>
Matrix<typename Derived::Scalar> select_columns(const Eigen::MatrixBase<Derived>& m,
                                                const std::vector<Index>& cols)
{
    Matrix<typename Derived::Scalar> out(m.rows(), static_cast<Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        out.col(static_cast<Index>(j)) = m.col(cols[j]);
    return out;
}

template <typename Derived>
Matrix<typename Derived::Scalar> select_rows(const Eigen::MatrixBase<Derived>& m,
                                             const std::vector<Index>& rows)
{
    Matrix<typename Derived::Scalar> out(static_cast<Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        out.row(static_cast<Index>(i)) = m.row(rows[i]);
    return out;
}

}  // namespace cwk

#endif  // CWKIRCH_SCALAR_HPP
