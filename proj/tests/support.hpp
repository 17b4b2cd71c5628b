#ifndef CWKIRCH_TESTS_SUPPORT_HPP
#define CWKIRCH_TESTS_SUPPORT_HPP

#include <initializer_list>

#include "cwkirch/scalar.hpp"

namespace support {

inline cwk::IntMatrix mat(cwk::Index r, cwk::Index c, std::initializer_list<long> entries)
{
    cwk::IntMatrix m(r, c);
    auto it = entries.begin();
    for (cwk::Index i = 0; i < r; ++i)
        for (cwk::Index j = 0; j < c; ++j)
            m(i, j) = *it++;
    return m;
}

inline cwk::RatVector vec(std::initializer_list<cwk::Rational> entries)
{
    cwk::RatVector v(static_cast<cwk::Index>(entries.size()));
    cwk::Index i = 0;
    for (const auto& e : entries)
        v(i++) = e;
    return v;
}

}  // namespace support

#endif  // CWKIRCH_TESTS_SUPPORT_HPP
