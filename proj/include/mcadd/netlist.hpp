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
  \file netlist.hpp
  \brief Combinational gate networks over AND/OR/NOT with ternary evaluation,
         size/depth statistics, metastability-containment checking, and a
         line-oriented text format.

  The text format is

      inputs a b s
      outputs n5
      n4 = NOT n3
      n5 = AND n1 n4

  where node ids n1..nI name the inputs (in header order), gates continue the
  numbering in topological order, and ZERO/ONE are predefined constant
  sources.  Inputs may also be referenced by their header names.  Files saved
  by \ref netlist::save are canonical: loading and saving them again is
  byte-identical.
*/

#pragma once

#include "kleene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace mcadd
{

struct circuit_stats
{
  std::size_t size = 0;  // gate count
  std::size_t depth = 0; // longest input-to-output path, in gates
};

/*! \brief Immutable-after-construction combinational circuit.
 *
 * Node ids: 0 and 1 are the constants ZERO and ONE, inputs follow, then
 * gates.  Gates can only reference already existing nodes, so the stored
 * order is topological by construction.
 */
class netlist
{
public:
  using node = std::uint32_t;

  static constexpr node zero = 0;
  static constexpr node one = 1;

  node add_input( std::string name )
  {
    if ( !gates_.empty() )
      throw std::invalid_argument( "inputs must be added before gates" );
    input_names_.push_back( std::move( name ) );
    return first_input + static_cast<node>( input_names_.size() ) - 1u;
  }

  node add_gate( gate_kind kind, node a, node b = 0 )
  {
    node const id = first_input + static_cast<node>( input_names_.size() + gates_.size() );
    check_ref( a, id );
    if ( kind != gate_kind::gate_not )
      check_ref( b, id );
    gates_.push_back( { kind, a, b } );
    return id;
  }

  node add_and( node a, node b ) { return add_gate( gate_kind::gate_and, a, b ); }
  node add_or( node a, node b ) { return add_gate( gate_kind::gate_or, a, b ); }
  node add_not( node a ) { return add_gate( gate_kind::gate_not, a ); }

  /*! \brief XOR macro: or(and(a, not b), and(not a, b)). */
  node add_xor( node a, node b )
  {
    return add_or( add_and( a, add_not( b ) ), add_and( add_not( a ), b ) );
  }

  /*! \brief Multiplexer macro or(and(a, not s), and(b, s)): a if s = 0, b if s = 1.
   *
   * This is the plain formula; it does not contain metastability (it yields M
   * at input (1,1,M)).  A hazard-free multiplexer must come from closure
   * synthesis.
   */
  node add_mux( node a, node b, node s )
  {
    return add_or( add_and( a, add_not( s ) ), add_and( b, s ) );
  }

  void add_output( node n )
  {
    check_ref( n, num_nodes() );
    outputs_.push_back( n );
  }

  std::size_t input_count() const { return input_names_.size(); }
  std::size_t output_count() const { return outputs_.size(); }
  std::size_t gate_count() const { return gates_.size(); }
  std::string const& input_name( std::size_t i ) const { return input_names_[i]; }
  node input_node( std::size_t i ) const { return first_input + static_cast<node>( i ); }
  node output_node( std::size_t i ) const { return outputs_[i]; }

  /*! \brief Ternary evaluation into caller-provided buffers (no allocation
   *         when \p scratch is reused across calls).
   */
  void eval_raw( std::span<trit const> in, std::span<trit> out, std::vector<trit>& scratch ) const
  {
    if ( in.size() != input_count() )
      throw std::invalid_argument( "eval: expected " + std::to_string( input_count() ) +
                                   " inputs, got " + std::to_string( in.size() ) );
    scratch.resize( num_nodes() );
    scratch[zero] = trit::zero;
    scratch[one] = trit::one;
    std::copy( in.begin(), in.end(), scratch.begin() + first_input );
    std::size_t idx = first_input + input_count();
    for ( auto const& g : gates_ )
    {
      switch ( g.kind )
      {
      case gate_kind::gate_and:
        scratch[idx] = trit_and( scratch[g.a], scratch[g.b] );
        break;
      case gate_kind::gate_or:
        scratch[idx] = trit_or( scratch[g.a], scratch[g.b] );
        break;
      default:
        scratch[idx] = trit_not( scratch[g.a] );
        break;
      }
      ++idx;
    }
    for ( std::size_t i = 0; i < outputs_.size(); ++i )
    {
      out[i] = scratch[outputs_[i]];
    }
  }

  tword eval( tword const& in ) const
  {
    tword out( output_count() );
    std::vector<trit> scratch;
    std::vector<trit> outbuf( output_count() );
    eval_raw( in.trits(), outbuf, scratch );
    return tword( std::move( outbuf ) );
  }

  /*! \brief Boolean restriction: evaluate on a stable word. */
  bword eval_stable( bword const& in ) const
  {
    auto const out = eval( in.to_tword() );
    auto const b = bword::from_tword( out );
    return *b; // stable inputs always yield stable outputs
  }

  circuit_stats stats() const
  {
    std::vector<std::size_t> depth( num_nodes(), 0 );
    std::size_t idx = first_input + input_count();
    for ( auto const& g : gates_ )
    {
      std::size_t d = depth[g.a];
      if ( g.kind != gate_kind::gate_not )
        d = std::max( d, depth[g.b] );
      depth[idx++] = d + 1u;
    }
    circuit_stats s{ gates_.size(), 0 };
    for ( auto o : outputs_ )
    {
      s.depth = std::max( s.depth, depth[o] );
    }
    return s;
  }

  /*! \brief Canonical text form; see the file comment for the grammar. */
  std::string save() const
  {
    std::ostringstream os;
    os << "inputs";
    for ( auto const& nm : input_names_ )
    {
      os << ' ' << nm;
    }
    os << '\n';
    os << "outputs";
    for ( auto o : outputs_ )
    {
      os << ' ' << ref_name( o );
    }
    os << '\n';
    std::size_t idx = first_input + input_count();
    for ( auto const& g : gates_ )
    {
      os << 'n' << idx - 1u << " = " << gate_name( g.kind ) << ' ' << ref_name( g.a );
      if ( g.kind != gate_kind::gate_not )
        os << ' ' << ref_name( g.b );
      os << '\n';
      ++idx;
    }
    return os.str();
  }

  void save_file( std::string const& path ) const
  {
    std::ofstream f( path );
    if ( !f )
      throw std::runtime_error( "cannot write " + path );
    f << save();
  }

  static netlist load( std::string const& text );

  static netlist load_file( std::string const& path )
  {
    std::ifstream f( path );
    if ( !f )
      throw std::runtime_error( "cannot read " + path );
    std::ostringstream os;
    os << f.rdbuf();
    return load( os.str() );
  }

private:
  struct gate
  {
    gate_kind kind;
    node a;
    node b;
  };

  static constexpr node first_input = 2;

  std::size_t num_nodes() const { return first_input + input_names_.size() + gates_.size(); }

  void check_ref( node n, node limit ) const
  {
    if ( n >= limit )
      throw std::invalid_argument( "reference to unknown node " + std::to_string( n ) );
  }

  std::string ref_name( node n ) const
  {
    if ( n == zero )
      return "ZERO";
    if ( n == one )
      return "ONE";
    // ids count inputs first, then gates: n1..nI are inputs
    return "n" + std::to_string( n - first_input + 1u );
  }

  std::vector<std::string> input_names_;
  std::vector<gate> gates_;
  std::vector<node> outputs_;
};

namespace detail
{

struct pending_gate
{
  std::string id;
  gate_kind kind;
  std::vector<std::string> operands;
  int line;
};

} // namespace detail

inline netlist netlist::load( std::string const& text )
{
  std::istringstream is( text );
  std::string linebuf;
  int lineno = 0;

  std::vector<std::string> input_names;
  std::vector<std::string> output_refs;
  std::vector<detail::pending_gate> pending;
  bool seen_inputs = false, seen_outputs = false;
  int outputs_line = 0;

  auto const split = []( std::string const& s ) {
    std::vector<std::string> toks;
    std::istringstream ts( s );
    std::string t;
    while ( ts >> t )
    {
      toks.push_back( t );
    }
    return toks;
  };

  while ( std::getline( is, linebuf ) )
  {
    ++lineno;
    auto const toks = split( linebuf );
    if ( toks.empty() )
      continue;
    if ( toks[0] == "inputs" )
    {
      if ( seen_inputs )
        throw parse_error( "duplicate inputs line", lineno, 1 );
      seen_inputs = true;
      input_names.assign( toks.begin() + 1, toks.end() );
      continue;
    }
    if ( toks[0] == "outputs" )
    {
      if ( seen_outputs )
        throw parse_error( "duplicate outputs line", lineno, 1 );
      seen_outputs = true;
      outputs_line = lineno;
      output_refs.assign( toks.begin() + 1, toks.end() );
      continue;
    }
    // gate line: <id> = KIND <op> [<op>]
    if ( toks.size() < 2u || toks[1] != "=" )
      throw parse_error( "expected '<id> = <GATE> <operands>'", lineno, 1 );
    if ( toks.size() < 3u )
      throw parse_error( "missing gate kind", lineno, 1 );
    gate_kind kind;
    if ( toks[2] == "AND" )
      kind = gate_kind::gate_and;
    else if ( toks[2] == "OR" )
      kind = gate_kind::gate_or;
    else if ( toks[2] == "NOT" )
      kind = gate_kind::gate_not;
    else
      throw parse_error( "unknown gate kind '" + toks[2] + "'", lineno, 1 );
    std::size_t const arity = kind == gate_kind::gate_not ? 1u : 2u;
    if ( toks.size() != 3u + arity )
      throw parse_error( "gate " + toks[0] + ": " + toks[2] + " expects " +
                             std::to_string( arity ) + " operand(s)",
                         lineno, 1 );
    pending.push_back( { toks[0], kind, { toks.begin() + 3, toks.end() }, lineno } );
  }

  if ( !seen_inputs )
    throw parse_error( "missing inputs line", lineno, 1 );
  if ( !seen_outputs )
    throw parse_error( "missing outputs line", lineno, 1 );

  // name table: constants, input names, input positional ids, gate ids
  std::map<std::string, node> names;
  names["ZERO"] = netlist::zero;
  names["ONE"] = netlist::one;
  netlist nl;
  for ( std::size_t i = 0; i < input_names.size(); ++i )
  {
    node const id = nl.add_input( input_names[i] );
    if ( !names.emplace( input_names[i], id ).second )
      throw parse_error( "duplicate input name '" + input_names[i] + "'", 1, 1 );
    names.emplace( "n" + std::to_string( i + 1u ), id );
  }

  std::map<std::string, std::size_t> gate_index;
  for ( std::size_t gi = 0; gi < pending.size(); ++gi )
  {
    auto const& pg = pending[gi];
    if ( names.count( pg.id ) || gate_index.count( pg.id ) )
      throw parse_error( "duplicate definition of '" + pg.id + "'", pg.line, 1 );
    gate_index[pg.id] = gi;
  }

  // order gates topologically; operands referencing later gates are fine for
  // a DAG, a true cycle is an error
  std::vector<int> state( pending.size(), 0 ); // 0 new, 1 on stack, 2 done
  std::vector<std::size_t> order;
  order.reserve( pending.size() );
  auto const visit = [&]( auto&& self, std::size_t gi ) -> void {
    if ( state[gi] == 2 )
      return;
    if ( state[gi] == 1 )
      throw parse_error( "cycle involving " + pending[gi].id, pending[gi].line, 1 );
    state[gi] = 1;
    for ( auto const& op : pending[gi].operands )
    {
      if ( names.count( op ) )
        continue;
      auto const it = gate_index.find( op );
      if ( it == gate_index.end() )
        throw parse_error( "unknown operand '" + op + "'", pending[gi].line, 1 );
      self( self, it->second );
    }
    state[gi] = 2;
    order.push_back( gi );
  };
  for ( std::size_t gi = 0; gi < pending.size(); ++gi )
  {
    visit( visit, gi );
  }

  std::map<std::string, node> gate_nodes;
  for ( auto gi : order )
  {
    auto const& pg = pending[gi];
    auto const lookup = [&]( std::string const& op ) -> node {
      if ( auto it = names.find( op ); it != names.end() )
        return it->second;
      return gate_nodes.at( op );
    };
    node const a = lookup( pg.operands[0] );
    node const b = pg.kind == gate_kind::gate_not ? 0u : lookup( pg.operands[1] );
    gate_nodes[pg.id] = nl.add_gate( pg.kind, a, b );
  }

  for ( auto const& ref : output_refs )
  {
    if ( auto it = names.find( ref ); it != names.end() )
    {
      nl.add_output( it->second );
    }
    else if ( auto g = gate_nodes.find( ref ); g != gate_nodes.end() )
    {
      nl.add_output( g->second );
    }
    else
    {
      throw parse_error( "unknown output '" + ref + "'", outputs_line, 1 );
    }
  }
  return nl;
}

/*! \brief Result of a metastability-containment check. */
struct mc_report
{
  bool ok = true;
  std::optional<tword> failing_input;
  tword expected; // closure value at the failing input
  tword actual;   // circuit value at the failing input
  std::uint64_t points_checked = 0;
};

/*! \brief Verifies C(x) = closure(f)(x) for every ternary x with at most k M trits.
 *
 * \p oracle maps stable input words to stable output words and defines the
 * Boolean reference function.  Inputs are enumerated lexicographically with trit
 * order 0 < 1 < M, so the reported failure is the first one in that order.
 * The estimated work (one oracle call per resolution of every enumerated
 * point) is checked against \p budget before starting.
 */
template<typename F>
mc_report mc_check( netlist const& c, F&& oracle, unsigned k, std::uint64_t budget = 100'000'000 )
{
  unsigned const w = static_cast<unsigned>( c.input_count() );
  if ( w > 62u )
    throw budget_error( "mc_check: input width too large" );
  k = std::min( k, w );

  // sum_{j<=k} C(w,j) * 2^(w-j) * 2^j = 2^w * sum_{j<=k} C(w,j)
  long double combos = 0.0L, binom = 1.0L;
  for ( unsigned j = 0; j <= k; ++j )
  {
    combos += binom;
    binom = binom * ( w - j ) / ( j + 1u );
  }
  long double const est = std::pow( 2.0L, static_cast<long double>( w ) ) * combos;
  if ( est > static_cast<long double>( budget ) )
    throw budget_error( "mc_check: estimated " + std::to_string( static_cast<double>( est ) ) +
                        " evaluations exceed the budget of " + std::to_string( budget ) );

  mc_report report;
  tword x( w );
  std::vector<trit> scratch;
  std::vector<trit> outbuf( c.output_count() );

  auto const rec = [&]( auto&& self, unsigned pos, unsigned metas ) -> bool {
    if ( pos == w )
    {
      ++report.points_checked;
      auto const want = closure_eval( oracle, x, k );
      c.eval_raw( x.trits(), outbuf, scratch );
      for ( std::size_t i = 0; i < outbuf.size(); ++i )
      {
        if ( outbuf[i] != want[i] )
        {
          report.ok = false;
          report.failing_input = x;
          report.expected = want;
          report.actual = tword( outbuf );
          return true;
        }
      }
      return false;
    }
    for ( trit t : { trit::zero, trit::one, trit::meta } )
    {
      if ( t == trit::meta && metas == k )
        continue;
      x[pos] = t;
      if ( self( self, pos + 1u, metas + ( t == trit::meta ? 1u : 0u ) ) )
        return true;
    }
    return false;
  };
  rec( rec, 0, 0 );
  return report;
}

} // namespace mcadd
