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
  \file kleene.hpp
  \brief Kleene three-valued logic: trits, words, gates, superposition,
         resolution, and the functional metastable closure.
*/

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcadd
{

/*! \brief Raised when an enumeration or evaluation budget is exhausted. */
struct budget_error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/*! \brief Raised when a word is not a codeword of the requested code. */
struct decode_error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/*! \brief Raised on malformed textual input (words, netlist files). */
struct parse_error : std::runtime_error
{
  parse_error( std::string const& msg, int line = 0, int column = 0 )
      : std::runtime_error( msg ), line( line ), column( column )
  {
  }

  int line;
  int column;
};

/*! \brief One ternary logic value: stable 0, stable 1, or metastable M. */
enum class trit : std::uint8_t
{
  zero = 0,
  one = 1,
  meta = 2
};

namespace detail
{
inline constexpr trit and_table[3][3] = {
    { trit::zero, trit::zero, trit::zero },
    { trit::zero, trit::one, trit::meta },
    { trit::zero, trit::meta, trit::meta } };

inline constexpr trit or_table[3][3] = {
    { trit::zero, trit::one, trit::meta },
    { trit::one, trit::one, trit::one },
    { trit::meta, trit::one, trit::meta } };

inline constexpr trit not_table[3] = { trit::one, trit::zero, trit::meta };
} // namespace detail

constexpr trit trit_and( trit a, trit b )
{
  return detail::and_table[static_cast<int>( a )][static_cast<int>( b )];
}

constexpr trit trit_or( trit a, trit b )
{
  return detail::or_table[static_cast<int>( a )][static_cast<int>( b )];
}

constexpr trit trit_not( trit a )
{
  return detail::not_table[static_cast<int>( a )];
}

/*! \brief Superposition of two trits: equal values pass through, disagreement yields M. */
constexpr trit superpose( trit a, trit b )
{
  return a == b ? a : trit::meta;
}

constexpr bool is_stable( trit t )
{
  return t != trit::meta;
}

constexpr char to_char( trit t )
{
  return t == trit::zero ? '0' : t == trit::one ? '1' : 'M';
}

/*! \brief Parses '0', '1', 'M'; 'X'/'x'/'m' are accepted as aliases for M. */
inline trit trit_from_char( char c )
{
  switch ( c )
  {
  case '0':
    return trit::zero;
  case '1':
    return trit::one;
  case 'M':
  case 'm':
  case 'X':
  case 'x':
    return trit::meta;
  default:
    throw parse_error( std::string( "invalid trit character '" ) + c + "'" );
  }
}

enum class gate_kind : std::uint8_t
{
  gate_and,
  gate_or,
  gate_not
};

inline std::string_view gate_name( gate_kind k )
{
  switch ( k )
  {
  case gate_kind::gate_and:
    return "AND";
  case gate_kind::gate_or:
    return "OR";
  default:
    return "NOT";
  }
}

/*! \brief Evaluates one basic gate on ternary inputs.
 *
 * AND and OR take exactly two inputs, NOT takes one; any other arity is an
 * error.  The output is stable iff the stable inputs already determine it.
 */
inline trit gate_eval( gate_kind kind, std::span<trit const> inputs )
{
  switch ( kind )
  {
  case gate_kind::gate_and:
    if ( inputs.size() != 2u )
      throw std::invalid_argument( "AND expects 2 inputs" );
    return trit_and( inputs[0], inputs[1] );
  case gate_kind::gate_or:
    if ( inputs.size() != 2u )
      throw std::invalid_argument( "OR expects 2 inputs" );
    return trit_or( inputs[0], inputs[1] );
  default:
    if ( inputs.size() != 1u )
      throw std::invalid_argument( "NOT expects 1 input" );
    return trit_not( inputs[0] );
  }
}

class bword;

/*! \brief Fixed-length word of trits.
 *
 * Index 0 is the leftmost trit (the first one printed); for positional codes
 * it is the most significant bit.
 */
class tword
{
public:
  tword() = default;

  explicit tword( std::size_t len, trit fill = trit::zero )
      : trits_( len, fill )
  {
  }

  explicit tword( std::vector<trit> ts )
      : trits_( std::move( ts ) )
  {
  }

  tword( std::initializer_list<trit> ts )
      : trits_( ts )
  {
  }

  /*! \brief Parses a ternary word; spaces are ignored, 'X' is an alias for 'M'. */
  static tword parse( std::string_view s )
  {
    std::vector<trit> ts;
    ts.reserve( s.size() );
    for ( char c : s )
    {
      if ( c == ' ' )
        continue;
      ts.push_back( trit_from_char( c ) );
    }
    return tword( std::move( ts ) );
  }

  std::size_t size() const { return trits_.size(); }
  bool empty() const { return trits_.empty(); }

  trit operator[]( std::size_t i ) const { return trits_[i]; }
  trit& operator[]( std::size_t i ) { return trits_[i]; }

  std::span<trit const> trits() const { return trits_; }

  auto begin() const { return trits_.begin(); }
  auto end() const { return trits_.end(); }

  bool is_stable() const
  {
    for ( auto t : trits_ )
    {
      if ( t == trit::meta )
        return false;
    }
    return true;
  }

  std::size_t meta_count() const
  {
    std::size_t n = 0;
    for ( auto t : trits_ )
    {
      if ( t == trit::meta )
        ++n;
    }
    return n;
  }

  std::string str( char meta = 'M' ) const
  {
    std::string s;
    s.reserve( trits_.size() );
    for ( auto t : trits_ )
    {
      s.push_back( t == trit::meta ? meta : to_char( t ) );
    }
    return s;
  }

  bool operator==( tword const& ) const = default;

private:
  std::vector<trit> trits_;
};

/*! \brief Fixed-length all-stable word, packed into a machine word.
 *
 * Bit j (0-based from the left) carries weight 2^(len-1-j), so \ref value
 * returns the usual most-significant-bit-first reading.  Words are limited to
 * 64 bits.
 */
class bword
{
public:
  bword() = default;

  bword( std::uint64_t value, unsigned len )
      : bits_( value ), len_( len )
  {
    if ( len > 64u )
      throw std::invalid_argument( "bword length exceeds 64" );
    if ( len < 64u && ( value >> len ) != 0u )
      throw std::invalid_argument( "bword value does not fit length" );
  }

  static bword parse( std::string_view s )
  {
    std::uint64_t v = 0;
    unsigned len = 0;
    for ( char c : s )
    {
      if ( c == ' ' )
        continue;
      if ( c != '0' && c != '1' )
        throw parse_error( std::string( "invalid bit character '" ) + c + "'" );
      if ( ++len > 64u )
        throw parse_error( "bit word exceeds 64 bits" );
      v = ( v << 1 ) | ( c == '1' ? 1u : 0u );
    }
    return bword( v, len );
  }

  /*! \brief Converts a stable ternary word; returns nothing if any trit is M. */
  static std::optional<bword> from_tword( tword const& w )
  {
    if ( w.size() > 64u || !w.is_stable() )
      return std::nullopt;
    std::uint64_t v = 0;
    for ( auto t : w )
    {
      v = ( v << 1 ) | ( t == trit::one ? 1u : 0u );
    }
    return bword( v, static_cast<unsigned>( w.size() ) );
  }

  unsigned size() const { return len_; }

  /*! \brief MSB-first integer reading of the word. */
  std::uint64_t value() const { return bits_; }

  bool bit( std::size_t j ) const { return ( bits_ >> ( len_ - 1u - j ) ) & 1u; }

  bword& set( std::size_t j, bool v )
  {
    std::uint64_t const m = std::uint64_t( 1 ) << ( len_ - 1u - j );
    bits_ = v ? ( bits_ | m ) : ( bits_ & ~m );
    return *this;
  }

  /*! \brief Bitwise complement within the word length. */
  bword operator~() const
  {
    std::uint64_t const mask = len_ == 64u ? ~std::uint64_t( 0 ) : ( ( std::uint64_t( 1 ) << len_ ) - 1u );
    return bword( ~bits_ & mask, len_ );
  }

  static bword concat( bword const& a, bword const& b )
  {
    if ( a.len_ + b.len_ > 64u )
      throw std::invalid_argument( "concatenation exceeds 64 bits" );
    if ( a.len_ == 0u )
      return b;
    return bword( ( a.bits_ << b.len_ ) | b.bits_, a.len_ + b.len_ );
  }

  bword slice( std::size_t from, unsigned len ) const
  {
    if ( from + len > len_ )
      throw std::invalid_argument( "slice out of range" );
    if ( len == 0u )
      return bword();
    std::uint64_t const mask = len == 64u ? ~std::uint64_t( 0 ) : ( ( std::uint64_t( 1 ) << len ) - 1u );
    return bword( ( bits_ >> ( len_ - from - len ) ) & mask, len );
  }

  tword to_tword() const
  {
    std::vector<trit> ts( len_ );
    for ( unsigned j = 0; j < len_; ++j )
    {
      ts[j] = bit( j ) ? trit::one : trit::zero;
    }
    return tword( std::move( ts ) );
  }

  std::string str() const
  {
    std::string s( len_, '0' );
    for ( unsigned j = 0; j < len_; ++j )
    {
      if ( bit( j ) )
        s[j] = '1';
    }
    return s;
  }

  bool operator==( bword const& ) const = default;

  auto operator<=>( bword const& other ) const
  {
    if ( auto c = len_ <=> other.len_; c != 0 )
      return c;
    return bits_ <=> other.bits_;
  }

private:
  std::uint64_t bits_ = 0;
  unsigned len_ = 0;
};

/*! \brief Default cap on the number of M trits expanded by \ref resolve. */
inline constexpr std::uint64_t default_meta_guard = 20;

/*! \brief Position-wise superposition of two equal-length words. */
inline tword superpose( tword const& x, tword const& y )
{
  if ( x.size() != y.size() )
    throw std::invalid_argument( "superpose: length mismatch" );
  tword out( x.size() );
  for ( std::size_t i = 0; i < x.size(); ++i )
  {
    out[i] = superpose( x[i], y[i] );
  }
  return out;
}

/*! \brief Superposition over a non-empty collection of equal-length words. */
inline tword superpose_all( std::span<tword const> xs )
{
  if ( xs.empty() )
    throw std::invalid_argument( "superpose_all: empty set" );
  tword acc = xs[0];
  for ( std::size_t i = 1; i < xs.size(); ++i )
  {
    acc = superpose( acc, xs[i] );
  }
  return acc;
}

/*! \brief Resolution: all stable words that agree with x on its stable positions.
 *
 * Exactly 2^(#M) words are returned, in ascending numeric order.  Words wider
 * than 64 trits or with more than \p max_meta M trits are rejected.
 */
inline std::vector<bword> resolve( tword const& x, std::uint64_t max_meta = default_meta_guard )
{
  if ( x.size() > 64u )
    throw std::invalid_argument( "resolve: word exceeds 64 trits" );
  std::vector<std::size_t> metas;
  for ( std::size_t i = 0; i < x.size(); ++i )
  {
    if ( x[i] == trit::meta )
      metas.push_back( i );
  }
  if ( metas.size() > max_meta )
    throw budget_error( "resolve: " + std::to_string( metas.size() ) +
                        " metastable trits exceed the enumeration limit of " +
                        std::to_string( max_meta ) );

  std::uint64_t base = 0;
  for ( std::size_t i = 0; i < x.size(); ++i )
  {
    base = ( base << 1 ) | ( x[i] == trit::one ? 1u : 0u );
  }

  std::size_t const m = metas.size();
  std::vector<bword> out;
  out.reserve( std::size_t( 1 ) << m );
  for ( std::uint64_t mask = 0; mask < ( std::uint64_t( 1 ) << m ); ++mask )
  {
    std::uint64_t v = base;
    for ( std::size_t j = 0; j < m; ++j )
    {
      if ( ( mask >> ( m - 1u - j ) ) & 1u )
        v |= std::uint64_t( 1 ) << ( x.size() - 1u - metas[j] );
    }
    out.emplace_back( v, static_cast<unsigned>( x.size() ) );
  }
  return out;
}

/*! \brief Functional metastable closure: superposition of f over all resolutions of x.
 *
 * \p f maps stable words of length |x| to stable words of a fixed output
 * width.  On an all-stable input this is exactly f(x).
 */
template<typename F>
tword closure_eval( F&& f, tword const& x, std::uint64_t max_meta = default_meta_guard )
{
  auto const rs = resolve( x, max_meta );
  bword const first = f( rs[0] );
  tword acc = first.to_tword();
  for ( std::size_t i = 1; i < rs.size(); ++i )
  {
    bword const next = f( rs[i] );
    acc = superpose( acc, next.to_tword() );
  }
  return acc;
}

} // namespace mcadd
