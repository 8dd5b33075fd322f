/* mcadd: interval addition under metastability
 *
 * Permission is hereby granted, free of charge, to any person
 * obtaining a copy of this software and associated documentation
 * files (the "Software"), to deal in the Software without
 * restriction, including without limitation the rights to use,
 * copy, modify, merge, publish, distribute, sublicense, and/or sell
 * copies of the Software, and to permit persons to whom the
 * Software is furnished to do so, subject to the following
 * conditions:
 *
 * The above copyright notice and this permission notice shall be
 * included in all copies or substantial portions of the Software.
 *
 * THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND,
 * EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES
 * OF MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND
 * NONINFRINGEMENT. IN NO EVENT SHALL THE AUTHORS OR COPYRIGHT
 * HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER LIABILITY,
 * WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
 * FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR
 * OTHER DEALINGS IN THE SOFTWARE.
 */

/*!
  \file tables.hpp
  \brief Reference tables as regeneratable fixtures.

  Four tables double as end-to-end checks: a serial (ripple) adder on binary
  words with one unstable bit, the hybrid addition oracle on two simulated
  columns, the 4-bit binary reflected Gray code, and rows 12..37 of the
  hybrid code with n = k = 4.  Each table has a frozen fixture and a
  generator that recomputes it from the library; the two must match
  byte-for-byte.  Unstable trits print as 'X' here.
*/

#pragma once

#include "synth.hpp"

#include <sstream>
#include <string>

namespace mcadd::tables
{

inline constexpr int count = 4;

/*! \brief Frozen expected text of table 1..4. */
inline std::string fixture( int which )
{
  switch ( which )
  {
  case 1:
    return "X    00011001  0001101X\n"
           "Y    00100101  00100101\n"
           "SUM  00111110  0XXXXXXX\n";
  case 2:
    return "X    00101 1X0  01X10 X00\n"
           "Y    01101 011  00111 011\n"
           "SUM  01000 00X  11001 XX1\n";
  case 3:
    return "0 0000\n"
           "1 0001\n"
           "2 0011\n"
           "3 0010\n"
           "4 0110\n"
           "5 0111\n"
           "6 0101\n"
           "7 0100\n"
           "8 1100\n"
           "9 1101\n"
           "10 1111\n"
           "11 1110\n"
           "12 1010\n"
           "13 1011\n"
           "14 1001\n"
           "15 1000\n";
  case 4:
    return "12 0011 1100\n"
           "13 0011 1110\n"
           "14 0011 1111\n"
           "15 0010 1111\n"
           "16 0010 0111\n"
           "17 0010 0011\n"
           "18 0010 0001\n"
           "19 0010 0000\n"
           "20 0110 0000\n"
           "21 0110 1000\n"
           "22 0110 1100\n"
           "23 0110 1110\n"
           "24 0110 1111\n"
           "25 0111 1111\n"
           "26 0111 0111\n"
           "27 0111 0011\n"
           "28 0111 0001\n"
           "29 0111 0000\n"
           "30 0101 0000\n"
           "31 0101 1000\n"
           "32 0101 1100\n"
           "33 0101 1110\n"
           "34 0101 1111\n"
           "35 0100 1111\n"
           "36 0100 0111\n"
           "37 0100 0011\n";
  default:
    throw std::invalid_argument( "table index must be 1..4" );
  }
}

namespace detail
{

inline std::string three_row( std::string const& x1, std::string const& x2,
                              std::string const& y1, std::string const& y2,
                              std::string const& s1, std::string const& s2 )
{
  std::ostringstream os;
  os << "X    " << x1 << "  " << x2 << '\n';
  os << "Y    " << y1 << "  " << y2 << '\n';
  os << "SUM  " << s1 << "  " << s2 << '\n';
  return os.str();
}

} // namespace detail

/*! \brief Recomputes table \p which from the library. */
inline std::string generate( int which )
{
  switch ( which )
  {
  case 1:
  {
    auto const ra = ripple_adder( 8 );
    auto const sum_of = [&]( std::string const& x, std::string const& y ) {
      auto const out = ra.eval( tword::parse( x + y + "0" ) );
      return tword( std::vector<trit>( out.begin(), out.begin() + 8 ) ).str( 'X' );
    };
    return detail::three_row( "00011001", "0001101X",
                              "00100101", "00100101",
                              sum_of( "00011001", "00100101" ),
                              sum_of( "0001101X", "00100101" ) );
  }
  case 2:
  {
    auto const spec = code_spec::hybrid( 5, 3 );
    auto const add = build_add( 5, 3 );
    auto const sum_of = [&]( std::string const& x, std::string const& y ) {
      auto const r = mc_add_oracle( add, tword::parse( x ), tword::parse( y ) );
      return pretty( spec, r.sum, 'X' );
    };
    return detail::three_row( "00101 1X0", "01X10 X00",
                              "01101 011", "00111 011",
                              sum_of( "00101 1X0", "01101 011" ),
                              sum_of( "01X10 X00", "00111 011" ) );
  }
  case 3:
  {
    std::ostringstream os;
    auto const spec = code_spec::brgc( 4 );
    for ( std::uint64_t i = 0; i < spec.domain_size(); ++i )
    {
      os << i << ' ' << encode( spec, i ).str() << '\n';
    }
    return os.str();
  }
  case 4:
  {
    std::ostringstream os;
    auto const spec = code_spec::hybrid( 4, 4 );
    for ( std::uint64_t i = 12; i <= 37; ++i )
    {
      os << i << ' ' << pretty( spec, encode( spec, i ) ) << '\n';
    }
    return os.str();
  }
  default:
    throw std::invalid_argument( "table index must be 1..4" );
  }
}

} // namespace mcadd::tables
