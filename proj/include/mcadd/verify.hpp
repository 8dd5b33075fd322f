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
  \file verify.hpp
  \brief Brute-force property oracles: k-preservation, k-recoverability,
         the minimum-M-count bound, the domain-size bound, and exhaustive
         small-instance code search.

  Recoverability is decided by a per-word interval intersection: the
  definition constrains each stable word independently, and intersections of
  integer intervals are again intervals, so a total extension of the decoder
  exists iff for every stable word the set of intervals whose extended
  codeword resolves to it has a non-empty intersection.  This decision
  procedure is exact; it is a derived algorithm, not taken from a reference.
*/

#pragma once

#include "codes.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace mcadd
{

/*! \brief Outcome of a preservation or recoverability check.
 *
 * When the property fails, \p witness holds the offending pair: for
 * preservation an interval I and a codeword outside gamma(I) that appears in
 * the resolution of x_I; for recoverability a stable word together with the
 * interval whose constraint made the word's feasible set empty.  Scans run
 * in a fixed order (intervals by (lo, hi), words by value), so reports are
 * reproducible.
 */
struct property_report
{
  enum class kind
  {
    preserving,
    recoverable
  };

  struct counterexample
  {
    interval range;
    bword word;
  };

  kind property;
  unsigned k = 0;
  bool holds = false;
  std::optional<counterexample> witness;
  /*! True when the family's concrete decoder extension was replayed against
   *  the definition and agreed; absent when no extension exists for the
   *  family or the property itself fails. */
  std::optional<bool> extension_verified;
};

/*! \brief An explicit injective code table, the common carrier for all checks. */
class code_table
{
public:
  explicit code_table( std::vector<bword> words )
      : words_( std::move( words ) )
  {
    if ( words_.empty() )
      throw std::invalid_argument( "code table must not be empty" );
    len_ = words_[0].size();
    for ( auto const& w : words_ )
    {
      if ( w.size() != len_ )
        throw std::invalid_argument( "code table words differ in length" );
    }
    auto sorted = words_;
    std::sort( sorted.begin(), sorted.end() );
    if ( std::adjacent_find( sorted.begin(), sorted.end() ) != sorted.end() )
      throw std::invalid_argument( "code table is not injective" );
  }

  static code_table from_spec( code_spec const& spec )
  {
    return code_table( codewords( spec ) );
  }

  std::uint64_t domain_size() const { return words_.size(); }
  unsigned word_length() const { return len_; }
  bword const& at( std::uint64_t i ) const { return words_[i]; }
  std::vector<bword> const& words() const { return words_; }

private:
  std::vector<bword> words_;
  unsigned len_ = 0;
};

namespace detail
{

// extended codeword as care/value masks: a stable word w lies in the
// resolution iff (w & care) == value
struct masked_word
{
  std::uint64_t care;
  std::uint64_t value;

  bool contains( std::uint64_t w ) const { return ( w & care ) == value; }
  unsigned meta_count( unsigned len ) const
  {
    std::uint64_t const full = len == 64u ? ~std::uint64_t( 0 ) : ( ( std::uint64_t( 1 ) << len ) - 1u );
    return std::popcount( full & ~care );
  }
};

inline masked_word superpose_masks( std::span<bword const> words, std::uint64_t lo, std::uint64_t hi )
{
  std::uint64_t care = ~std::uint64_t( 0 );
  std::uint64_t value = words[lo].value();
  for ( std::uint64_t i = lo + 1u; i <= hi; ++i )
  {
    care &= ~( value ^ words[i].value() );
    value &= care;
  }
  return { care, value };
}

struct interval_mask
{
  interval range;
  masked_word mask;
};

inline std::vector<interval_mask> interval_masks( code_table const& table, unsigned k )
{
  auto const M = table.domain_size();
  std::vector<interval_mask> out;
  for ( std::uint64_t lo = 0; lo < M; ++lo )
  {
    for ( std::uint64_t hi = lo; hi <= std::min( M - 1u, lo + k ); ++hi )
    {
      out.push_back( { { lo, hi }, superpose_masks( table.words(), lo, hi ) } );
    }
  }
  return out;
}

inline void check_enumeration_budget( std::uint64_t ops, std::uint64_t budget )
{
  if ( ops > budget )
    throw budget_error( "enumeration guard exceeded: " + std::to_string( ops ) +
                        " > " + std::to_string( budget ) + " operations" );
}

} // namespace detail

inline constexpr std::uint64_t default_check_budget = 100'000'000;

/*! \brief Checks that resolving any extended codeword of imprecision <= k
 *         reveals no codeword outside the original interval.
 */
inline property_report check_preserving( code_table const& table, unsigned k,
                                         std::uint64_t budget = default_check_budget )
{
  auto const M = table.domain_size();
  if ( table.word_length() > 62u )
    throw budget_error( "word length too large for exhaustive checking" );
  detail::check_enumeration_budget( M * ( k + 1u ) * M, budget );

  property_report report{ property_report::kind::preserving, k, true, std::nullopt, std::nullopt };
  auto const masks = detail::interval_masks( table, k );
  for ( auto const& im : masks )
  {
    for ( std::uint64_t j = 0; j < M; ++j )
    {
      if ( im.mask.contains( table.at( j ).value() ) && !im.range.contains( j ) )
      {
        report.holds = false;
        report.witness = { im.range, table.at( j ) };
        return report;
      }
    }
  }
  return report;
}

/*! \brief Checks whether one total decoder extension can map every resolution
 *         of every extended codeword of imprecision <= k back into its range.
 */
inline property_report check_recoverable( code_table const& table, unsigned k,
                                          std::uint64_t budget = default_check_budget )
{
  auto const M = table.domain_size();
  unsigned const n = table.word_length();
  if ( n > 26u )
    throw budget_error( "word length too large for exhaustive checking" );
  std::uint64_t const words = std::uint64_t( 1 ) << n;
  detail::check_enumeration_budget( words * ( k + 1u ) * M / 8u, budget );

  property_report report{ property_report::kind::recoverable, k, true, std::nullopt, std::nullopt };
  auto const masks = detail::interval_masks( table, k );
  for ( std::uint64_t w = 0; w < words; ++w )
  {
    interval feasible{ 0, M - 1u };
    for ( auto const& im : masks )
    {
      if ( !im.mask.contains( w ) )
        continue;
      feasible.lo = std::max( feasible.lo, im.range.lo );
      feasible.hi = std::min( feasible.hi, im.range.hi );
      if ( feasible.lo > feasible.hi )
      {
        report.holds = false;
        report.witness = { im.range, bword( w, n ) };
        return report;
      }
    }
  }
  return report;
}

/*! \brief Every extended codeword of imprecision p <= k has at least p M trits. */
inline bool check_m_count( code_table const& table, unsigned k )
{
  for ( auto const& im : detail::interval_masks( table, k ) )
  {
    if ( im.mask.meta_count( table.word_length() ) < im.range.imprecision() )
      return false;
  }
  return true;
}

inline property_report check_preserving( code_spec const& spec, unsigned k,
                                         std::uint64_t budget = default_check_budget )
{
  return check_preserving( code_table::from_spec( spec ), k, budget );
}

/*! \brief Family-level recoverability check.
 *
 * On top of the interval-intersection criterion, families that ship a
 * concrete decoder extension (unary and hybrid) have that extension replayed
 * against the definition whenever the abstract check holds; the result lands
 * in property_report::extension_verified.
 */
inline property_report check_recoverable( code_spec const& spec, unsigned k,
                                          std::uint64_t budget = default_check_budget )
{
  auto report = check_recoverable( code_table::from_spec( spec ), k, budget );
  bool const has_extension = spec.family() == code_family::unary_up ||
                             spec.family() == code_family::unary_down ||
                             spec.family() == code_family::hybrid;
  if ( !has_extension || !report.holds )
    return report;

  bool agree = true;
  auto const M = spec.domain_size();
  for ( std::uint64_t lo = 0; lo < M && agree; ++lo )
  {
    for ( std::uint64_t hi = lo; hi <= std::min( M - 1u, lo + k ) && agree; ++hi )
    {
      interval const I{ lo, hi };
      for ( auto const& w : resolve( extended_codeword( spec, I ), 62 ) )
      {
        if ( !I.contains( extended_decode( spec, w ) ) )
        {
          agree = false;
          break;
        }
      }
    }
  }
  report.extension_verified = agree;
  return report;
}

inline bool check_m_count( code_spec const& spec, unsigned k )
{
  return check_m_count( code_table::from_spec( spec ), k );
}

/*! \brief Largest domain an n-bit k-recoverable code can have: 2^(n-k) * (k+1). */
inline std::uint64_t max_domain( unsigned n, unsigned k )
{
  if ( k > n )
    throw std::invalid_argument( "max_domain requires k <= n" );
  if ( n - k > 57u )
    throw std::invalid_argument( "max_domain overflows 64 bits" );
  return ( std::uint64_t( 1 ) << ( n - k ) ) * ( k + 1u );
}

struct bound_search_options
{
  /*! Upper bound on the number of injective candidate tables to test. */
  std::uint64_t max_candidates = 100'000'000;
  /*! Pin the first codeword to the all-zero word.  Sound because XOR-ing
   *  every codeword with a constant commutes with superposition and
   *  resolution, so recoverability is invariant under that translation. */
  bool fix_first_to_zero = false;
};

struct bound_search_result
{
  /*! True iff no injective table over the given parameters is k-recoverable. */
  bool none_exists = true;
  /*! First k-recoverable table in lexicographic candidate order, if any. */
  std::vector<bword> witness;
  std::uint64_t candidates_checked = 0;
};

namespace detail
{

inline bool recoverable_raw( std::vector<bword> const& words, unsigned k, unsigned n )
{
  std::uint64_t const M = words.size();
  std::uint64_t const space = std::uint64_t( 1 ) << n;
  std::vector<interval_mask> masks;
  masks.reserve( M * ( k + 1u ) );
  for ( std::uint64_t lo = 0; lo < M; ++lo )
  {
    for ( std::uint64_t hi = lo; hi <= std::min( M - 1u, lo + k ); ++hi )
    {
      masks.push_back( { { lo, hi }, superpose_masks( words, lo, hi ) } );
    }
  }
  for ( std::uint64_t w = 0; w < space; ++w )
  {
    interval feasible{ 0, M - 1u };
    for ( auto const& im : masks )
    {
      if ( !im.mask.contains( w ) )
        continue;
      feasible.lo = std::max( feasible.lo, im.range.lo );
      feasible.hi = std::min( feasible.hi, im.range.hi );
      if ( feasible.lo > feasible.hi )
        return false;
    }
  }
  return true;
}

} // namespace detail

/*! \brief Tests every injective table [m] -> B^n for k-recoverability.
 *
 * Returns none_exists = true when no candidate passes; otherwise the first
 * passing table (candidates enumerated lexicographically by codeword values)
 * is reported as a witness.  The candidate count is checked against the
 * budget before the search starts.
 */
inline bound_search_result exhaustive_bound_search( unsigned n, unsigned k, std::uint64_t m,
                                                    bound_search_options const& opts = {} )
{
  if ( n > 16u )
    throw std::invalid_argument( "exhaustive_bound_search supports n <= 16" );
  std::uint64_t const space = std::uint64_t( 1 ) << n;
  if ( m == 0u || m > space )
    throw std::invalid_argument( "domain size must lie in 1..2^n" );

  // candidate count = falling factorial, before any symmetry reduction
  long double candidates = 1.0L;
  for ( std::uint64_t i = 0; i < m; ++i )
  {
    candidates *= static_cast<long double>( space - i );
  }
  if ( opts.fix_first_to_zero )
    candidates /= static_cast<long double>( space );
  if ( candidates > static_cast<long double>( opts.max_candidates ) )
    throw budget_error( "candidate count exceeds the budget of " +
                        std::to_string( opts.max_candidates ) );

  bound_search_result result;
  std::vector<bword> table;
  table.reserve( m );
  std::vector<bool> used( space, false );

  auto const rec = [&]( auto&& self, std::uint64_t depth ) -> bool {
    if ( depth == m )
    {
      ++result.candidates_checked;
      return detail::recoverable_raw( table, k, n );
    }
    for ( std::uint64_t v = 0; v < space; ++v )
    {
      if ( used[v] )
        continue;
      if ( depth == 0u && opts.fix_first_to_zero && v != 0u )
        break;
      used[v] = true;
      table.emplace_back( v, n );
      if ( self( self, depth + 1u ) )
        return true;
      table.pop_back();
      used[v] = false;
    }
    return false;
  };

  if ( rec( rec, 0 ) )
  {
    result.none_exists = false;
    result.witness = table;
  }
  return result;
}

} // namespace mcadd
