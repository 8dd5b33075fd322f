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
  \file codes.hpp
  \brief Code families: binary, unary thermometer (both flavors), binary
         reflected Gray code, and the hybrid code, together with extended
         codewords and the recoverable extended decoder.

  A code maps integers 0..M-1 injectively to fixed-length bit words.  The
  hybrid code hybrid(n,k) concatenates an n-bit BRGC part with a k-bit unary
  thermometer part whose flavor (all-ones-first or all-zeros-first) is chosen
  by the parity of the BRGC part.  Its domain size is 2^n * (k+1).
*/

#pragma once

#include "kleene.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace mcadd
{

/*! \brief Closed integer interval lo..hi (both inclusive, lo <= hi). */
struct interval
{
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  std::uint64_t imprecision() const { return hi - lo; }
  std::uint64_t count() const { return hi - lo + 1; }
  bool contains( std::uint64_t v ) const { return lo <= v && v <= hi; }
  bool operator==( interval const& ) const = default;

  std::string str() const
  {
    return "<" + std::to_string( lo ) + "," + std::to_string( hi ) + ">";
  }
};

enum class code_family
{
  binary,
  unary_up,
  unary_down,
  brgc,
  hybrid
};

/*! \brief Selects a code family with its parameters.
 *
 * word_length is n for all families except hybrid, where it is n+k.  The
 * hybrid family requires n >= k >= 1.
 */
class code_spec
{
public:
  static code_spec binary( unsigned n ) { return code_spec( code_family::binary, n, 0 ); }
  static code_spec unary_up( unsigned n ) { return code_spec( code_family::unary_up, n, 0 ); }
  static code_spec unary_down( unsigned n ) { return code_spec( code_family::unary_down, n, 0 ); }
  static code_spec brgc( unsigned n ) { return code_spec( code_family::brgc, n, 0 ); }

  static code_spec hybrid( unsigned n, unsigned k )
  {
    if ( k < 1u )
      throw std::invalid_argument( "hybrid requires k >= 1" );
    if ( n < k )
      throw std::invalid_argument( "hybrid requires n >= k" );
    return code_spec( code_family::hybrid, n, k );
  }

  code_family family() const { return family_; }
  unsigned n() const { return n_; }
  unsigned k() const { return k_; }

  unsigned word_length() const
  {
    return family_ == code_family::hybrid ? n_ + k_ : n_;
  }

  std::uint64_t domain_size() const
  {
    switch ( family_ )
    {
    case code_family::binary:
    case code_family::brgc:
      return std::uint64_t( 1 ) << n_;
    case code_family::unary_up:
    case code_family::unary_down:
      return std::uint64_t( n_ ) + 1u;
    default:
      return ( std::uint64_t( 1 ) << n_ ) * ( k_ + 1u );
    }
  }

  std::string name() const
  {
    switch ( family_ )
    {
    case code_family::binary:
      return "binary(" + std::to_string( n_ ) + ")";
    case code_family::unary_up:
      return "unary-up(" + std::to_string( n_ ) + ")";
    case code_family::unary_down:
      return "unary-down(" + std::to_string( n_ ) + ")";
    case code_family::brgc:
      return "brgc(" + std::to_string( n_ ) + ")";
    default:
      return "hybrid(" + std::to_string( n_ ) + "," + std::to_string( k_ ) + ")";
    }
  }

  bool operator==( code_spec const& ) const = default;

private:
  code_spec( code_family f, unsigned n, unsigned k )
      : family_( f ), n_( n ), k_( k )
  {
    if ( n < 1u )
      throw std::invalid_argument( "code requires n >= 1" );
    if ( word_length() > 64u )
      throw std::invalid_argument( "word length exceeds 64 bits" );
    if ( ( family_ == code_family::binary || family_ == code_family::brgc || family_ == code_family::hybrid ) && n > 57u )
      throw std::invalid_argument( "domain size exceeds the representable range" );
  }

  code_family family_;
  unsigned n_;
  unsigned k_;
};

/*! \brief Number of ones modulo 2; the empty word has parity 0. */
inline bool parity( bword const& w )
{
  return std::popcount( w.value() ) & 1u;
}

namespace detail
{

inline bword encode_binary( unsigned n, std::uint64_t i )
{
  return bword( i, n );
}

inline bword encode_brgc( unsigned n, std::uint64_t i )
{
  return bword( i ^ ( i >> 1 ), n );
}

inline bword encode_unary_up( unsigned n, std::uint64_t i )
{
  // 1^i 0^(n-i)
  if ( i == 0u )
    return bword( 0, n );
  std::uint64_t const ones = ( i == 64u ) ? ~std::uint64_t( 0 ) : ( ( std::uint64_t( 1 ) << i ) - 1u );
  return bword( ones << ( n - i ), n );
}

inline std::uint64_t decode_brgc( bword const& w )
{
  std::uint64_t v = 0;
  bool p = false;
  for ( unsigned j = 0; j < w.size(); ++j )
  {
    p ^= w.bit( j );
    v = ( v << 1 ) | ( p ? 1u : 0u );
  }
  return v;
}

} // namespace detail

/*! \brief Encodes integer i; i must lie in [0, domain_size). */
inline bword encode( code_spec const& spec, std::uint64_t i )
{
  if ( i >= spec.domain_size() )
    throw std::out_of_range( spec.name() + ": value " + std::to_string( i ) + " outside domain [0," +
                             std::to_string( spec.domain_size() ) + ")" );
  switch ( spec.family() )
  {
  case code_family::binary:
    return detail::encode_binary( spec.n(), i );
  case code_family::brgc:
    return detail::encode_brgc( spec.n(), i );
  case code_family::unary_up:
    return detail::encode_unary_up( spec.n(), i );
  case code_family::unary_down:
    return ~detail::encode_unary_up( spec.n(), i );
  default:
  {
    unsigned const k = spec.k();
    bword const g = detail::encode_brgc( spec.n(), i / ( k + 1u ) );
    bword u = detail::encode_unary_up( k, i % ( k + 1u ) );
    if ( parity( g ) )
      u = ~u;
    return bword::concat( g, u );
  }
  }
}

/*! \brief True iff w is a codeword of the given code (wrong length included as false). */
inline bool is_codeword( code_spec const& spec, bword const& w )
{
  if ( w.size() != spec.word_length() )
    return false;
  switch ( spec.family() )
  {
  case code_family::binary:
  case code_family::brgc:
    return true;
  case code_family::unary_up:
  {
    // 1*0* pattern: adding 1 to the complement's suffix form leaves a power of two
    std::uint64_t const v = ( ~w ).value();
    return ( v & ( v + 1u ) ) == 0u;
  }
  case code_family::unary_down:
  {
    std::uint64_t const v = w.value();
    return ( v & ( v + 1u ) ) == 0u;
  }
  default:
  {
    bword const u = w.slice( spec.n(), spec.k() );
    std::uint64_t const v = parity( w.slice( 0, spec.n() ) ) ? u.value() : ( ~u ).value();
    return ( v & ( v + 1u ) ) == 0u;
  }
  }
}

/*! \brief Decodes a codeword; throws decode_error on non-codewords and
 *         std::invalid_argument on a length mismatch.
 */
inline std::uint64_t decode( code_spec const& spec, bword const& w )
{
  if ( w.size() != spec.word_length() )
    throw std::invalid_argument( spec.name() + ": expected a word of length " +
                                 std::to_string( spec.word_length() ) + ", got " + std::to_string( w.size() ) );
  if ( !is_codeword( spec, w ) )
    throw decode_error( spec.name() + ": " + w.str() + " is not a codeword" );
  switch ( spec.family() )
  {
  case code_family::binary:
    return w.value();
  case code_family::brgc:
    return detail::decode_brgc( w );
  case code_family::unary_up:
    return std::popcount( w.value() );
  case code_family::unary_down:
    return spec.n() - std::popcount( w.value() );
  default:
  {
    bword const g = w.slice( 0, spec.n() );
    bword const u = w.slice( spec.n(), spec.k() );
    std::uint64_t const r = parity( g ) ? spec.k() - std::popcount( u.value() )
                                        : std::popcount( u.value() );
    return detail::decode_brgc( g ) * ( spec.k() + 1u ) + r;
  }
  }
}

/*! \brief Materializes all codewords in domain order. */
inline std::vector<bword> codewords( code_spec const& spec, std::uint64_t max_domain = std::uint64_t( 1 ) << 24 )
{
  if ( spec.domain_size() > max_domain )
    throw budget_error( spec.name() + ": domain too large to materialize" );
  std::vector<bword> out;
  out.reserve( spec.domain_size() );
  for ( std::uint64_t i = 0; i < spec.domain_size(); ++i )
  {
    out.push_back( encode( spec, i ) );
  }
  return out;
}

/*! \brief Extended codeword of an interval: the superposition of the encodings
 *         of all its elements.
 */
inline tword extended_codeword( code_spec const& spec, interval I,
                                std::uint64_t max_size = std::uint64_t( 1 ) << 24 )
{
  if ( I.lo > I.hi )
    throw std::invalid_argument( "interval with lo > hi" );
  if ( I.hi >= spec.domain_size() )
    throw std::out_of_range( spec.name() + ": interval " + I.str() + " outside domain" );
  if ( I.count() > max_size )
    throw budget_error( "extended_codeword: interval too large to enumerate" );
  tword acc = encode( spec, I.lo ).to_tword();
  for ( std::uint64_t v = I.lo + 1u; v <= I.hi; ++v )
  {
    acc = superpose( acc, encode( spec, v ).to_tword() );
  }
  return acc;
}

/*! \brief Maps an arbitrary k-bit word to a unary thermometer codeword.
 *
 * With pi = 0 the result is an up-flavor codeword (1^l 0^(k-l)), with pi = 1 a
 * down-flavor codeword.  The anchor index l is chosen from the first/last
 * occurrence of a 0 or 1, switching on the bit at position ceil(k/2):
 *
 *   pi=0, mid=0: l = first 0 - 1      pi=0, mid=1: l = last 1
 *   pi=1, mid=0: l = last 0           pi=1, mid=1: l = first 1 - 1
 *
 * Indices are 1-based with sentinels 0 (no such bit, max) and k+1 (min).
 * Codewords of the matching flavor are fixed points.
 */
inline bword map_unary( unsigned k, bool pi, bword const& x )
{
  if ( x.size() != k )
    throw std::invalid_argument( "map_unary: word length does not match k" );
  if ( k == 0u )
    return bword();

  auto const l_min = [&]( bool b ) -> unsigned {
    for ( unsigned j = 0; j < k; ++j )
    {
      if ( x.bit( j ) == b )
        return j + 1u;
    }
    return k + 1u;
  };
  auto const l_max = [&]( bool b ) -> unsigned {
    for ( unsigned j = k; j > 0; --j )
    {
      if ( x.bit( j - 1u ) == b )
        return j;
    }
    return 0u;
  };

  bool const mid = x.bit( ( k + 1u ) / 2u - 1u ); // position ceil(k/2), 1-based
  unsigned l;
  if ( !pi )
  {
    l = mid ? l_max( true ) : l_min( false ) - 1u;
    return detail::encode_unary_up( k, l );
  }
  l = mid ? l_min( true ) - 1u : l_max( false );
  return ~detail::encode_unary_up( k, l );
}

/*! \brief Total extension of the decoder for the recoverable families.
 *
 * Unary words are first repaired with \ref map_unary (flavor 0 for up, 1 for
 * down); hybrid words repair their unary part with the flavor given by the
 * parity of the BRGC part.  Agrees with \ref decode on codewords.  The binary
 * and BRGC families have no recoverable extension and are rejected.
 */
inline std::uint64_t extended_decode( code_spec const& spec, bword const& w )
{
  if ( w.size() != spec.word_length() )
    throw std::invalid_argument( spec.name() + ": expected a word of length " +
                                 std::to_string( spec.word_length() ) + ", got " + std::to_string( w.size() ) );
  switch ( spec.family() )
  {
  case code_family::unary_up:
    return decode( spec, map_unary( spec.n(), false, w ) );
  case code_family::unary_down:
    return decode( spec, map_unary( spec.n(), true, w ) );
  case code_family::hybrid:
  {
    bword const g = w.slice( 0, spec.n() );
    bword const u = w.slice( spec.n(), spec.k() );
    return decode( spec, bword::concat( g, map_unary( spec.k(), parity( g ), u ) ) );
  }
  default:
    throw std::invalid_argument( spec.name() + ": no recoverable extension defined" );
  }
}

/*! \brief Word length over log2 of the domain size; >= 1 for all families. */
inline double redundancy( code_spec const& spec )
{
  return static_cast<double>( spec.word_length() ) / std::log2( static_cast<double>( spec.domain_size() ) );
}

inline double rate( code_spec const& spec )
{
  return 1.0 / redundancy( spec );
}

/*! \brief Prints a word the way the code is written: hybrid words get a space
 *         between the BRGC and unary parts.
 */
inline std::string pretty( code_spec const& spec, tword const& w, char meta = 'M' )
{
  std::string s = w.str( meta );
  if ( spec.family() == code_family::hybrid && s.size() == spec.word_length() )
  {
    s.insert( spec.n(), 1, ' ' );
  }
  return s;
}

inline std::string pretty( code_spec const& spec, bword const& w )
{
  return pretty( spec, w.to_tword() );
}

} // namespace mcadd
