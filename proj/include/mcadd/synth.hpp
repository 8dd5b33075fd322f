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
  \file synth.hpp
  \brief Circuit constructions: parallel prefix networks, the code
         translators, the unary repair circuit, binary adders, the composed
         hybrid addition pipeline, and exact metastable-closure synthesis via
         prime implicants.

  The closure synthesis builds, per output bit, the OR of the AND terms of
  all prime implicants.  This netlist computes the metastable closure on all
  ternary inputs: if the closure is 1, the resolutions form a stable subcube
  inside some prime implicant whose term then evaluates to 1; if the closure
  is 0, every term has a stably falsified literal; otherwise some term is M
  and none is 1.  The construction is exact but worst-case exponential in
  size, which is acceptable at the instance sizes this library targets.
*/

#pragma once

#include "codes.hpp"
#include "netlist.hpp"

#include <algorithm>
#include <vector>

namespace mcadd
{

enum class ppc_op
{
  op_and,
  op_or,
  op_xor
};

enum class scan_dir
{
  left_to_right,
  right_to_left
};

namespace detail
{

using node = netlist::node;

inline unsigned ceil_log2( std::uint64_t v )
{
  unsigned l = 0;
  while ( ( std::uint64_t( 1 ) << l ) < v )
    ++l;
  return l;
}

/*! \brief Brent-Kung prefix network over an arbitrary element type.
 *
 * combine(low, high) must fold the accumulated prefix \p low with the next,
 * higher-indexed element \p high.  Linear size, logarithmic depth.
 */
template<typename T, typename Fn>
std::vector<T> prefix_network( std::vector<T> const& x, Fn&& combine )
{
  if ( x.size() <= 1u )
    return x;
  std::vector<T> pairs;
  pairs.reserve( x.size() / 2u );
  for ( std::size_t i = 0; i + 1u < x.size(); i += 2u )
  {
    pairs.push_back( combine( x[i], x[i + 1u] ) );
  }
  auto const z = prefix_network( pairs, combine ); // z[j] folds x[0..2j+1]
  std::vector<T> out( x.size() );
  out[0] = x[0];
  for ( std::size_t j = 0; j < z.size(); ++j )
  {
    out[2u * j + 1u] = z[j];
    if ( 2u * j + 2u < x.size() )
      out[2u * j + 2u] = combine( z[j], x[2u * j + 2u] );
  }
  return out;
}

inline node apply_op( netlist& nl, ppc_op op, node a, node b )
{
  switch ( op )
  {
  case ppc_op::op_and:
    return nl.add_and( a, b );
  case ppc_op::op_or:
    return nl.add_or( a, b );
  default:
    return nl.add_xor( a, b );
  }
}

inline std::vector<node> emit_ppc( netlist& nl, ppc_op op, std::vector<node> x, scan_dir dir )
{
  if ( dir == scan_dir::right_to_left )
    std::reverse( x.begin(), x.end() );
  auto out = prefix_network( x, [&]( node lo, node hi ) { return apply_op( nl, op, lo, hi ); } );
  if ( dir == scan_dir::right_to_left )
    std::reverse( out.begin(), out.end() );
  return out;
}

inline std::vector<node> emit_brgc_to_bin( netlist& nl, std::vector<node> const& g )
{
  // binary bit i is the parity of the BRGC prefix 1..i
  return emit_ppc( nl, ppc_op::op_xor, g, scan_dir::left_to_right );
}

inline std::vector<node> emit_bin_to_brgc( netlist& nl, std::vector<node> const& b )
{
  std::vector<node> out( b.size() );
  out[0] = b[0];
  for ( std::size_t i = 1; i < b.size(); ++i )
  {
    out[i] = nl.add_xor( b[i - 1u], b[i] );
  }
  return out;
}

/*! \brief Unary (flavor pi) to binary; recursive midpoint selection.
 *
 * The input is XOR-ed with pi to normalize to the up flavor, padded with
 * constant zeros so its length becomes a power of two minus one, then split
 * at the middle bit: that bit is the most significant output bit and selects
 * which half feeds the recursion.
 */
inline std::vector<node> emit_un_to_bin( netlist& nl, node pi, std::vector<node> const& x )
{
  std::size_t const k = x.size();
  unsigned const l = ceil_log2( k + 1u );
  std::vector<node> y;
  y.reserve( ( std::size_t( 1 ) << l ) - 1u );
  for ( auto xn : x )
  {
    y.push_back( nl.add_xor( pi, xn ) );
  }
  y.resize( ( std::size_t( 1 ) << l ) - 1u, netlist::zero );

  auto const rec = [&]( auto&& self, std::span<node const> w ) -> std::vector<node> {
    if ( w.size() == 1u )
      return { w[0] };
    std::size_t const mid = w.size() / 2u;
    auto const left = self( self, w.subspan( 0, mid ) );
    auto const right = self( self, w.subspan( mid + 1u ) );
    std::vector<node> out{ w[mid] };
    for ( std::size_t i = 0; i < left.size(); ++i )
    {
      out.push_back( nl.add_mux( left[i], right[i], w[mid] ) );
    }
    return out;
  };
  return rec( rec, y );
}

/*! \brief Binary to unary (flavor pi); recursive doubling, then truncation to k bits. */
inline std::vector<node> emit_bin_to_un( netlist& nl, node pi, std::vector<node> const& b, unsigned k )
{
  auto const rec = [&]( auto&& self, std::span<node const> w ) -> std::vector<node> {
    if ( w.size() == 1u )
      return { w[0] };
    auto const y = self( self, w.subspan( 1 ) );
    std::size_t const half = y.size() + 1u;
    std::vector<node> out;
    out.reserve( 2u * half - 1u );
    for ( std::size_t i = 0; i < 2u * half - 1u; ++i )
    {
      node const if0 = i < y.size() ? y[i] : netlist::zero;
      node const if1 = i < half ? netlist::one : y[i - half];
      out.push_back( nl.add_mux( if0, if1, w[0] ) );
    }
    return out;
  };
  auto full = rec( rec, b );
  full.resize( k ); // encoded values never exceed k
  for ( auto& n : full )
  {
    n = nl.add_xor( pi, n );
  }
  return full;
}

/*! \brief The four-case unary repair: all four prefix/suffix networks in
 *         parallel, selected by a 4:1 multiplexer on (pi, middle bit).
 */
inline std::vector<node> emit_map( netlist& nl, node pi, std::vector<node> const& x )
{
  std::size_t const k = x.size();
  auto const a = emit_ppc( nl, ppc_op::op_and, x, scan_dir::left_to_right );
  auto const b = emit_ppc( nl, ppc_op::op_or, x, scan_dir::right_to_left );
  auto const c = emit_ppc( nl, ppc_op::op_and, x, scan_dir::right_to_left );
  auto const d = emit_ppc( nl, ppc_op::op_or, x, scan_dir::left_to_right );
  node const mid = x[( k - 1u ) / 2u]; // position ceil(k/2), 1-based
  std::vector<node> out( k );
  for ( std::size_t i = 0; i < k; ++i )
  {
    node const up = nl.add_mux( a[i], b[i], mid );
    node const down = nl.add_mux( c[i], d[i], mid );
    out[i] = nl.add_mux( up, down, pi );
  }
  return out;
}

struct adder_nodes
{
  std::vector<node> sum; // MSB first
  node carry;
};

/*! \brief Parallel-prefix adder on MSB-first operand vectors. */
inline adder_nodes emit_prefix_adder( netlist& nl, std::vector<node> const& a,
                                      std::vector<node> const& b, node cin )
{
  std::size_t const w = a.size();
  std::vector<node> g( w ), p( w ); // LSB-first generate/propagate
  for ( std::size_t i = 0; i < w; ++i )
  {
    g[i] = nl.add_and( a[w - 1u - i], b[w - 1u - i] );
    p[i] = nl.add_xor( a[w - 1u - i], b[w - 1u - i] );
  }
  std::vector<std::pair<node, node>> gp( w );
  for ( std::size_t i = 0; i < w; ++i )
  {
    gp[i] = { g[i], p[i] };
  }
  auto const pre = prefix_network( gp, [&]( auto const& lo, auto const& hi ) {
    return std::pair<node, node>{ nl.add_or( hi.first, nl.add_and( hi.second, lo.first ) ),
                                  nl.add_and( hi.second, lo.second ) };
  } );

  auto const carry_into = [&]( std::size_t i ) -> node {
    // carry into bit i: fold of bits 0..i-1, then the external carry-in
    if ( i == 0u )
      return cin;
    auto const& [gi, pi_] = pre[i - 1u];
    return nl.add_or( gi, nl.add_and( pi_, cin ) );
  };

  adder_nodes out;
  out.sum.resize( w );
  for ( std::size_t i = 0; i < w; ++i )
  {
    out.sum[w - 1u - i] = nl.add_xor( p[i], carry_into( i ) );
  }
  out.carry = carry_into( w );
  return out;
}

/*! \brief Ripple-carry adder on MSB-first operand vectors. */
inline adder_nodes emit_ripple_adder( netlist& nl, std::vector<node> const& a,
                                      std::vector<node> const& b, node cin )
{
  std::size_t const w = a.size();
  adder_nodes out;
  out.sum.resize( w );
  node c = cin;
  for ( std::size_t i = 0; i < w; ++i )
  {
    node const ai = a[w - 1u - i], bi = b[w - 1u - i];
    node const p = nl.add_xor( ai, bi );
    out.sum[w - 1u - i] = nl.add_xor( p, c );
    c = nl.add_or( nl.add_and( ai, bi ), nl.add_and( c, p ) );
  }
  out.carry = c;
  return out;
}

/*! \brief Adder modulo m on ceil(log2 m)-bit operands.
 *
 * For m a power of two this is the plain prefix adder.  Otherwise the sum is
 * computed twice, once with the constant offset 2^l - m added; that path's
 * carry fires exactly when a + b >= m, and then also holds a + b - m in its
 * low bits, so a multiplexer on the carry selects the reduced result.
 */
inline adder_nodes emit_mod_adder( netlist& nl, std::vector<node> const& a,
                                   std::vector<node> const& b, std::uint64_t m )
{
  std::size_t const w = a.size();
  if ( m == ( std::uint64_t( 1 ) << w ) )
    return emit_prefix_adder( nl, a, b, netlist::zero );

  std::uint64_t const offset = ( std::uint64_t( 1 ) << w ) - m;
  std::vector<node> offs( w );
  for ( std::size_t i = 0; i < w; ++i )
  {
    offs[i] = ( ( offset >> ( w - 1u - i ) ) & 1u ) ? netlist::one : netlist::zero;
  }
  auto const plain = emit_prefix_adder( nl, a, b, netlist::zero );
  auto const biased_b = emit_prefix_adder( nl, b, offs, netlist::zero ); // carry-free: b < m
  auto const shifted = emit_prefix_adder( nl, a, biased_b.sum, netlist::zero );

  adder_nodes out;
  out.carry = shifted.carry;
  out.sum.resize( w );
  for ( std::size_t i = 0; i < w; ++i )
  {
    out.sum[i] = nl.add_mux( plain.sum[i], shifted.sum[i], out.carry );
  }
  return out;
}

inline std::vector<node> add_inputs( netlist& nl, std::string const& stem, unsigned count )
{
  std::vector<node> out( count );
  for ( unsigned i = 0; i < count; ++i )
  {
    out[i] = nl.add_input( stem + std::to_string( i + 1u ) );
  }
  return out;
}

} // namespace detail

/*! \brief Parallel prefix circuit: output i is the op-fold of inputs 1..i
 *         (or i..n when scanning right to left).
 *
 * Linear size and logarithmic depth; measured envelopes are at most 10n
 * gates and 6*ceil(log2 n) depth for the xor flavor (2n combiners, each a
 * five-gate xor macro) and 2n gates for and/or.
 */
inline netlist ppc( ppc_op op, unsigned n, scan_dir dir = scan_dir::left_to_right )
{
  if ( n < 1u )
    throw std::invalid_argument( "ppc requires n >= 1" );
  netlist nl;
  auto const x = detail::add_inputs( nl, "x", n );
  for ( auto o : detail::emit_ppc( nl, op, x, dir ) )
  {
    nl.add_output( o );
  }
  return nl;
}

/*! \brief Translates a BRGC codeword to its binary encoding (prefix parities). */
inline netlist brgc_to_bin( unsigned n )
{
  if ( n < 1u )
    throw std::invalid_argument( "brgc_to_bin requires n >= 1" );
  netlist nl;
  auto const x = detail::add_inputs( nl, "g", n );
  for ( auto o : detail::emit_brgc_to_bin( nl, x ) )
  {
    nl.add_output( o );
  }
  return nl;
}

/*! \brief Translates binary to BRGC with one layer of XOR pairs; constant depth. */
inline netlist bin_to_brgc( unsigned n )
{
  if ( n < 1u )
    throw std::invalid_argument( "bin_to_brgc requires n >= 1" );
  netlist nl;
  auto const x = detail::add_inputs( nl, "b", n );
  for ( auto o : detail::emit_bin_to_brgc( nl, x ) )
  {
    nl.add_output( o );
  }
  return nl;
}

/*! \brief Unary codeword (flavor selected by input pi) to binary value.
 *
 * Inputs pi, x1..xk; outputs ceil(log2(k+1)) bits.  Non-codeword inputs
 * produce unspecified stable output; the addition pipeline guarantees
 * codewords by repairing first.
 */
inline netlist un_to_bin( unsigned k )
{
  if ( k < 1u )
    throw std::invalid_argument( "un_to_bin requires k >= 1" );
  netlist nl;
  auto const pi = nl.add_input( "pi" );
  auto const x = detail::add_inputs( nl, "x", k );
  for ( auto o : detail::emit_un_to_bin( nl, pi, x ) )
  {
    nl.add_output( o );
  }
  return nl;
}

/*! \brief Binary value (at most k) to unary codeword of flavor pi.
 *
 * Inputs pi, b1..b_ceil(log2(k+1)); outputs k bits.
 */
inline netlist bin_to_un( unsigned k )
{
  if ( k < 1u )
    throw std::invalid_argument( "bin_to_un requires k >= 1" );
  netlist nl;
  auto const pi = nl.add_input( "pi" );
  auto const b = detail::add_inputs( nl, "b", detail::ceil_log2( k + 1u ) );
  for ( auto o : detail::emit_bin_to_un( nl, pi, b, k ) )
  {
    nl.add_output( o );
  }
  return nl;
}

/*! \brief Circuit form of \ref map_unary: inputs pi, x1..xk; outputs k bits. */
inline netlist map_circuit( unsigned k )
{
  if ( k < 1u )
    throw std::invalid_argument( "map_circuit requires k >= 1" );
  netlist nl;
  auto const pi = nl.add_input( "pi" );
  auto const x = detail::add_inputs( nl, "x", k );
  for ( auto o : detail::emit_map( nl, pi, x ) )
  {
    nl.add_output( o );
  }
  return nl;
}

/*! \brief w-bit parallel-prefix adder: inputs a1..aw, b1..bw, cin; outputs
 *         s1..sw, cout.  Logarithmic depth, linear size.
 */
inline netlist prefix_adder( unsigned w )
{
  if ( w < 1u )
    throw std::invalid_argument( "prefix_adder requires w >= 1" );
  netlist nl;
  auto const a = detail::add_inputs( nl, "a", w );
  auto const b = detail::add_inputs( nl, "b", w );
  auto const cin = nl.add_input( "cin" );
  auto const r = detail::emit_prefix_adder( nl, a, b, cin );
  for ( auto o : r.sum )
  {
    nl.add_output( o );
  }
  nl.add_output( r.carry );
  return nl;
}

/*! \brief w-bit ripple-carry adder with the same ports as \ref prefix_adder. */
inline netlist ripple_adder( unsigned w )
{
  if ( w < 1u )
    throw std::invalid_argument( "ripple_adder requires w >= 1" );
  netlist nl;
  auto const a = detail::add_inputs( nl, "a", w );
  auto const b = detail::add_inputs( nl, "b", w );
  auto const cin = nl.add_input( "cin" );
  auto const r = detail::emit_ripple_adder( nl, a, b, cin );
  for ( auto o : r.sum )
  {
    nl.add_output( o );
  }
  nl.add_output( r.carry );
  return nl;
}

/*! \brief Two-operand ripple adder without a carry-in port: inputs x1..xw,
 *         y1..yw; outputs s1..sw, ovf.  The serial adder of the binary
 *         reference table.
 */
inline netlist build_binary_add( unsigned w )
{
  if ( w < 1u )
    throw std::invalid_argument( "build_binary_add requires w >= 1" );
  netlist nl;
  auto const x = detail::add_inputs( nl, "x", w );
  auto const y = detail::add_inputs( nl, "y", w );
  auto const r = detail::emit_ripple_adder( nl, x, y, netlist::zero );
  for ( auto o : r.sum )
  {
    nl.add_output( o );
  }
  nl.add_output( r.carry );
  return nl;
}

/*! \brief The composed hybrid addition pipeline ADD(n,k).
 *
 * Inputs x1..x(n+k), y1..y(n+k); outputs s1..s(n+k), ovf.  Each operand's
 * BRGC part is translated to binary (the translation's least significant bit
 * doubles as the parity), the unary part is repaired by the map stage and
 * translated, the unary values are added modulo k+1 with the carry feeding
 * the BRGC adder, and the results are translated back.  On codeword inputs
 * the output decodes to the integer sum; stable non-codewords are first
 * repaired exactly like the extended decoder does.  The sum port carries the
 * truncated result when ovf is 1.
 */
inline netlist build_add( unsigned n, unsigned k )
{
  if ( k < 1u || n < k )
    throw std::invalid_argument( "build_add requires n >= k >= 1" );
  netlist nl;
  auto const x = detail::add_inputs( nl, "x", n + k );
  auto const y = detail::add_inputs( nl, "y", n + k );

  auto const part = []( std::vector<detail::node> const& v, std::size_t from, std::size_t len ) {
    return std::vector<detail::node>( v.begin() + from, v.begin() + from + len );
  };

  auto const xb = detail::emit_brgc_to_bin( nl, part( x, 0, n ) );
  auto const yb = detail::emit_brgc_to_bin( nl, part( y, 0, n ) );
  auto const pix = xb[n - 1u];
  auto const piy = yb[n - 1u];

  auto const xv = detail::emit_un_to_bin( nl, pix, detail::emit_map( nl, pix, part( x, n, k ) ) );
  auto const yv = detail::emit_un_to_bin( nl, piy, detail::emit_map( nl, piy, part( y, n, k ) ) );

  auto const unary = detail::emit_mod_adder( nl, xv, yv, k + 1u );
  auto const gray = detail::emit_prefix_adder( nl, xb, yb, unary.carry );

  auto const sg = detail::emit_bin_to_brgc( nl, gray.sum );
  auto const su = detail::emit_bin_to_un( nl, gray.sum[n - 1u], unary.sum, k );

  for ( auto o : sg )
  {
    nl.add_output( o );
  }
  for ( auto o : su )
  {
    nl.add_output( o );
  }
  nl.add_output( gray.carry );
  return nl;
}

/*! \brief Explicit function table, the oracle carrier for closure synthesis. */
class truth_table
{
public:
  truth_table( unsigned in_width, unsigned out_width )
      : in_( in_width ), out_( out_width ), rows_( std::size_t( 1 ) << in_width, 0 )
  {
    if ( in_width > 24u )
      throw std::invalid_argument( "truth table input width exceeds 24" );
    if ( out_width > 64u )
      throw std::invalid_argument( "truth table output width exceeds 64" );
  }

  template<typename F>
  static truth_table from_function( unsigned in_width, F&& f )
  {
    bword const probe = f( bword( 0, in_width ) );
    truth_table tt( in_width, probe.size() );
    for ( std::uint64_t x = 0; x < tt.rows_.size(); ++x )
    {
      tt.rows_[x] = bword( f( bword( x, in_width ) ) ).value();
    }
    return tt;
  }

  static truth_table from_netlist( netlist const& nl, unsigned max_width = 16 )
  {
    if ( nl.input_count() > max_width )
      throw budget_error( "from_netlist: " + std::to_string( nl.input_count() ) +
                          " inputs exceed the width guard of " + std::to_string( max_width ) );
    return from_function( static_cast<unsigned>( nl.input_count() ),
                          [&]( bword const& x ) { return nl.eval_stable( x ); } );
  }

  unsigned input_width() const { return in_; }
  unsigned output_width() const { return out_; }

  void set_row( std::uint64_t x, bword const& out ) { rows_[x] = out.value(); }
  bool output_bit( std::uint64_t x, unsigned o ) const
  {
    return ( rows_[x] >> ( out_ - 1u - o ) ) & 1u;
  }

  bword operator()( bword const& x ) const
  {
    return bword( rows_[x.value()], out_ );
  }

private:
  unsigned in_;
  unsigned out_;
  std::vector<std::uint64_t> rows_;
};

/*! \brief Partial assignment over input positions; masks use the same
 *         MSB-first layout as \ref bword, so a stable word matches iff
 *         (word & care) == bits.  A cube with no literals is the
 *         constant-true implicant of a constant function.
 */
struct cube
{
  std::uint64_t care = 0;
  std::uint64_t bits = 0;
  unsigned width = 0;

  bool matches( bword const& w ) const { return ( w.value() & care ) == bits; }
  unsigned literal_count() const { return std::popcount( care ); }

  /*! \brief Required value at 0-based position j, if constrained. */
  std::optional<bool> literal( unsigned j ) const
  {
    std::uint64_t const m = std::uint64_t( 1 ) << ( width - 1u - j );
    if ( !( care & m ) )
      return std::nullopt;
    return ( bits & m ) != 0u;
  }

  bool operator==( cube const& ) const = default;
  auto operator<=>( cube const& ) const = default;
};

struct synth_options
{
  unsigned max_width = 16;
  std::size_t max_implicants = 1'000'000;
};

/*! \brief All prime implicants of one output bit, by Quine-McCluskey
 *         expansion: maximal cubes on which the output is constantly 1,
 *         sorted lexicographically by (care, bits).
 */
inline std::vector<cube> prime_implicants( truth_table const& f, unsigned out_idx,
                                           synth_options const& opts = {} )
{
  unsigned const w = f.input_width();
  if ( w > opts.max_width )
    throw budget_error( "prime_implicants: input width " + std::to_string( w ) +
                        " exceeds the guard of " + std::to_string( opts.max_width ) );
  std::uint64_t const full = w == 0u ? 0u : ( ( std::uint64_t( 1 ) << w ) - 1u );

  std::vector<cube> level;
  for ( std::uint64_t x = 0; x <= full; ++x )
  {
    if ( f.output_bit( x, out_idx ) )
      level.push_back( { full, x, w } );
    if ( w == 0u )
      break;
  }

  std::vector<cube> primes;
  while ( !level.empty() )
  {
    if ( level.size() > opts.max_implicants )
      throw budget_error( "prime_implicants: " + std::to_string( level.size() ) +
                          " cubes exceed the ceiling of " + std::to_string( opts.max_implicants ) );
    // bucket by (care, ones count); only adjacent ones counts can combine
    std::sort( level.begin(), level.end(), []( cube const& a, cube const& b ) {
      if ( a.care != b.care )
        return a.care < b.care;
      if ( std::popcount( a.bits ) != std::popcount( b.bits ) )
        return std::popcount( a.bits ) < std::popcount( b.bits );
      return a.bits < b.bits;
    } );
    std::vector<cube> next;
    std::vector<bool> combined( level.size(), false );
    for ( std::size_t lo = 0; lo < level.size(); )
    {
      std::size_t hi = lo;
      auto const same_bucket = [&]( cube const& a, cube const& b ) {
        return a.care == b.care && std::popcount( a.bits ) == std::popcount( b.bits );
      };
      while ( hi < level.size() && same_bucket( level[lo], level[hi] ) )
        ++hi;
      std::size_t up = hi;
      while ( up < level.size() && level[up].care == level[lo].care &&
              std::popcount( level[up].bits ) == std::popcount( level[lo].bits ) + 1 )
        ++up;
      for ( std::size_t i = lo; i < hi; ++i )
      {
        for ( std::size_t j = hi; j < up; ++j )
        {
          std::uint64_t const diff = level[i].bits ^ level[j].bits;
          if ( std::popcount( diff ) != 1 )
            continue;
          combined[i] = combined[j] = true;
          next.push_back( { level[i].care & ~diff, level[i].bits & ~diff, w } );
        }
      }
      lo = hi;
    }
    for ( std::size_t i = 0; i < level.size(); ++i )
    {
      if ( !combined[i] )
        primes.push_back( level[i] );
    }
    std::sort( next.begin(), next.end() );
    next.erase( std::unique( next.begin(), next.end() ), next.end() );
    level = std::move( next );
  }
  std::sort( primes.begin(), primes.end() );
  return primes;
}

namespace detail
{

inline node balanced_reduce( netlist& nl, std::vector<node> terms, gate_kind kind )
{
  while ( terms.size() > 1u )
  {
    std::vector<node> next;
    next.reserve( ( terms.size() + 1u ) / 2u );
    for ( std::size_t i = 0; i + 1u < terms.size(); i += 2u )
    {
      next.push_back( nl.add_gate( kind, terms[i], terms[i + 1u] ) );
    }
    if ( terms.size() % 2u )
      next.push_back( terms.back() );
    terms = std::move( next );
  }
  return terms[0];
}

} // namespace detail

/*! \brief Exact metastable-closure synthesis: per output bit, the OR of the
 *         AND terms of all prime implicants.  The result satisfies
 *         eval(C, x) = closure(f)(x) for every ternary x, with no bound on
 *         the number of M trits.
 */
inline netlist mc_transform( truth_table const& f, synth_options const& opts = {} )
{
  netlist nl;
  auto const inputs = detail::add_inputs( nl, "x", f.input_width() );
  std::vector<detail::node> negated( f.input_width(), 0 );
  auto const negate = [&]( unsigned j ) {
    if ( negated[j] == 0u )
      negated[j] = nl.add_not( inputs[j] );
    return negated[j];
  };

  for ( unsigned o = 0; o < f.output_width(); ++o )
  {
    auto const pis = prime_implicants( f, o, opts );
    std::vector<detail::node> terms;
    terms.reserve( pis.size() );
    for ( auto const& pi : pis )
    {
      std::vector<detail::node> lits;
      for ( unsigned j = 0; j < f.input_width(); ++j )
      {
        if ( auto const v = pi.literal( j ) )
          lits.push_back( *v ? inputs[j] : negate( j ) );
      }
      terms.push_back( lits.empty() ? netlist::one
                                    : detail::balanced_reduce( nl, std::move( lits ), gate_kind::gate_and ) );
    }
    nl.add_output( terms.empty() ? netlist::zero
                                 : detail::balanced_reduce( nl, std::move( terms ), gate_kind::gate_or ) );
  }
  return nl;
}

struct add_result
{
  tword sum;
  trit ovf = trit::zero;

  bool operator==( add_result const& ) const = default;
};

/*! \brief Functional closure of an addition circuit: the superposition of the
 *         circuit's outputs over all resolution pairs of the ternary inputs.
 *
 * \p add_circuit must have 2w inputs and w+1 outputs (sum then overflow),
 * as produced by \ref build_add or \ref ripple_adder composed widths.  The
 * combined number of M trits in x and y is limited by \p max_meta.
 */
inline add_result mc_add_oracle( netlist const& add_circuit, tword const& x, tword const& y,
                                 std::uint64_t max_meta = default_meta_guard )
{
  std::size_t const w = x.size();
  if ( y.size() != w || add_circuit.input_count() != 2u * w )
    throw std::invalid_argument( "mc_add_oracle: word widths do not match the circuit" );
  if ( x.meta_count() + y.meta_count() > max_meta )
    throw budget_error( "mc_add_oracle: " + std::to_string( x.meta_count() + y.meta_count() ) +
                        " metastable trits exceed the resolution budget of " +
                        std::to_string( max_meta ) );

  auto const rx = resolve( x, max_meta );
  auto const ry = resolve( y, max_meta );

  std::vector<trit> in( 2u * w );
  std::vector<trit> out( add_circuit.output_count() );
  std::vector<trit> scratch;
  std::vector<trit> acc;
  bool first = true;
  for ( auto const& xr : rx )
  {
    for ( std::size_t j = 0; j < w; ++j )
    {
      in[j] = xr.bit( j ) ? trit::one : trit::zero;
    }
    for ( auto const& yr : ry )
    {
      for ( std::size_t j = 0; j < w; ++j )
      {
        in[w + j] = yr.bit( j ) ? trit::one : trit::zero;
      }
      add_circuit.eval_raw( in, out, scratch );
      if ( first )
      {
        acc = out;
        first = false;
      }
      else
      {
        for ( std::size_t j = 0; j < out.size(); ++j )
        {
          acc[j] = superpose( acc[j], out[j] );
        }
      }
    }
  }

  add_result result;
  result.ovf = acc.back();
  acc.pop_back();
  result.sum = tword( std::move( acc ) );
  return result;
}

/*! \brief Convenience overload building the hybrid adder for \p spec on the fly. */
inline add_result mc_add_oracle( code_spec const& spec, tword const& x, tword const& y,
                                 std::uint64_t max_meta = default_meta_guard )
{
  if ( spec.family() != code_family::hybrid )
    throw std::invalid_argument( "mc_add_oracle requires a hybrid code spec" );
  return mc_add_oracle( build_add( spec.n(), spec.k() ), x, y, max_meta );
}

} // namespace mcadd
