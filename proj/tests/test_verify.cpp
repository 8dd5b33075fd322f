#include <catch2/catch_amalgamated.hpp>

#include <mcadd/verify.hpp>

using namespace mcadd;

namespace
{

// definition replay for a reported witness
bool witness_violates_preserving( code_table const& table, property_report const& r )
{
  REQUIRE( r.witness.has_value() );
  auto const& [I, w] = *r.witness;
  // w must be a codeword outside gamma(I) that appears in res(x_I)
  auto const masks = detail::superpose_masks( table.words(), I.lo, I.hi );
  bool found = false;
  for ( std::uint64_t j = 0; j < table.domain_size(); ++j )
  {
    if ( table.at( j ) == w && !I.contains( j ) )
      found = true;
  }
  return found && masks.contains( w.value() );
}

bool witness_violates_recoverable( code_table const& table, unsigned k, property_report const& r )
{
  REQUIRE( r.witness.has_value() );
  auto const& [I, w] = *r.witness;
  // w lies in res(x_I) and its full constraint set has empty intersection
  auto const wi = detail::superpose_masks( table.words(), I.lo, I.hi );
  if ( !wi.contains( w.value() ) )
    return false;
  interval feasible{ 0, table.domain_size() - 1u };
  for ( auto const& im : detail::interval_masks( table, k ) )
  {
    if ( !im.mask.contains( w.value() ) )
      continue;
    feasible.lo = std::max( feasible.lo, im.range.lo );
    feasible.hi = std::min( feasible.hi, im.range.hi );
    if ( feasible.lo > feasible.hi )
      return true;
  }
  return false;
}

} // namespace

TEST_CASE( "preservation examples" )
{
  CHECK_FALSE( check_preserving( code_spec::binary( 4 ), 1 ).holds );
  CHECK( check_preserving( code_spec::brgc( 4 ), 1 ).holds );
  CHECK_FALSE( check_preserving( code_spec::brgc( 4 ), 2 ).holds );
  CHECK( check_preserving( code_spec::unary_up( 6 ), 6 ).holds );
  CHECK( check_preserving( code_spec::hybrid( 5, 3 ), 3 ).holds );

  SECTION( "witnesses replay against the definition" )
  {
    for ( auto const& spec : { code_spec::binary( 4 ), code_spec::binary( 6 ) } )
    {
      auto const table = code_table::from_spec( spec );
      auto const r = check_preserving( table, 1 );
      REQUIRE_FALSE( r.holds );
      CHECK( witness_violates_preserving( table, r ) );
    }
    auto const table = code_table::from_spec( code_spec::brgc( 5 ) );
    auto const r = check_preserving( table, 2 );
    REQUIRE_FALSE( r.holds );
    CHECK( witness_violates_preserving( table, r ) );
  }
}

TEST_CASE( "recoverability examples" )
{
  CHECK( check_recoverable( code_spec::hybrid( 4, 4 ), 2 ).holds );
  CHECK( check_recoverable( code_spec::unary_up( 5 ), 5 ).holds );
  CHECK( check_recoverable( code_spec::hybrid( 4, 3 ), 2 ).holds );
  CHECK_FALSE( check_recoverable( code_spec::brgc( 4 ), 2 ).holds );
  CHECK_FALSE( check_recoverable( code_spec::binary( 4 ), 1 ).holds );
  CHECK( check_recoverable( code_spec::brgc( 4 ), 1 ).holds );

  SECTION( "witness replay" )
  {
    auto const table = code_table::from_spec( code_spec::brgc( 4 ) );
    auto const r = check_recoverable( table, 2 );
    REQUIRE_FALSE( r.holds );
    CHECK( witness_violates_recoverable( table, 2, r ) );
  }

  SECTION( "concrete extension agrees with the abstract criterion" )
  {
    for ( auto const& [spec, k] : { std::pair{ code_spec::unary_up( 6 ), 6u },
                                    { code_spec::unary_down( 6 ), 6u },
                                    { code_spec::hybrid( 4, 3 ), 2u },
                                    { code_spec::hybrid( 4, 4 ), 2u },
                                    { code_spec::hybrid( 5, 3 ), 2u },
                                    { code_spec::hybrid( 3, 1 ), 1u } } )
    {
      auto const r = check_recoverable( spec, k );
      CHECK( r.holds );
      REQUIRE( r.extension_verified.has_value() );
      CHECK( *r.extension_verified );
    }
  }
}

TEST_CASE( "recoverable implies preserving on tested instances" )
{
  std::vector<std::pair<code_spec, unsigned>> instances = {
      { code_spec::binary( 4 ), 1 }, { code_spec::binary( 5 ), 2 },
      { code_spec::brgc( 4 ), 1 }, { code_spec::brgc( 4 ), 2 }, { code_spec::brgc( 6 ), 1 },
      { code_spec::unary_up( 5 ), 5 }, { code_spec::unary_down( 4 ), 3 },
      { code_spec::hybrid( 3, 2 ), 1 }, { code_spec::hybrid( 3, 2 ), 2 },
      { code_spec::hybrid( 4, 3 ), 2 }, { code_spec::hybrid( 4, 3 ), 3 },
      { code_spec::hybrid( 4, 4 ), 2 }, { code_spec::hybrid( 5, 3 ), 2 } };
  for ( auto const& [spec, k] : instances )
  {
    if ( check_recoverable( spec, k ).holds )
    {
      CHECK( check_preserving( spec, k ).holds );
    }
  }
}

TEST_CASE( "hybrid tightness, reported per instance" )
{
  // the hybrid code is exactly ceil(k/2)-recoverable on all instances tried;
  // recorded as empirical observations, not as a general claim
  for ( auto const& [n, k] : { std::pair<unsigned, unsigned>{ 3, 1 }, { 3, 2 }, { 4, 3 }, { 4, 4 }, { 5, 3 } } )
  {
    auto const spec = code_spec::hybrid( n, k );
    unsigned const r = ( k + 1u ) / 2u;
    CHECK( check_recoverable( spec, r ).holds );
    CHECK_FALSE( check_recoverable( spec, r + 1u ).holds );
    CHECK( check_preserving( spec, k ).holds );
    CHECK_FALSE( check_preserving( spec, k + 1u ).holds );
  }
}

TEST_CASE( "minimum M count" )
{
  CHECK( check_m_count( code_spec::unary_up( 6 ), 6 ) );
  CHECK( check_m_count( code_spec::hybrid( 4, 4 ), 4 ) );
  CHECK( check_m_count( code_spec::brgc( 5 ), 1 ) );

  SECTION( "the footnote table: three words at pairwise Hamming distance 2" )
  {
    code_table const table( { bword::parse( "100" ), bword::parse( "010" ), bword::parse( "001" ) } );
    CHECK( check_m_count( table, 2 ) );
    auto const m = detail::superpose_masks( table.words(), 0, 2 );
    CHECK( m.meta_count( 3 ) == 3u ); // superposition of all three is MMM
  }
}

TEST_CASE( "max_domain" )
{
  CHECK( max_domain( 4, 1 ) == 16u );
  CHECK( max_domain( 3, 2 ) == 6u );
  for ( unsigned n = 1; n <= 16; ++n )
  {
    for ( unsigned k = 1; k <= n; ++k )
    {
      CHECK( max_domain( n + k, k ) == ( std::uint64_t( 1 ) << n ) * ( k + 1u ) );
    }
  }
  CHECK_THROWS_AS( max_domain( 3, 4 ), std::invalid_argument );
}

TEST_CASE( "hybrid meets the domain bound with equality" )
{
  for ( unsigned n = 1; n <= 16; ++n )
  {
    for ( unsigned k = 1; k <= n; ++k )
    {
      CHECK( code_spec::hybrid( n, k ).domain_size() == max_domain( n + k, k ) );
    }
  }
}

TEST_CASE( "exhaustive bound search" )
{
  SECTION( "no 3-bit 2-recoverable code with 7 values" )
  {
    auto const r = exhaustive_bound_search( 3, 2, 7 );
    CHECK( r.none_exists );
    CHECK( r.candidates_checked == 40320u ); // 8*7*6*5*4*3*2 ordered injections
  }

  SECTION( "a 6-value witness exists and re-checks" )
  {
    auto const r = exhaustive_bound_search( 3, 2, 6 );
    REQUIRE_FALSE( r.none_exists );
    REQUIRE( r.witness.size() == 6u );
    CHECK( check_recoverable( code_table( r.witness ), 2 ).holds );
    // lexicographically first witness
    std::vector<std::string> got;
    for ( auto const& w : r.witness )
    {
      got.push_back( w.str() );
    }
    CHECK( got == std::vector<std::string>{ "000", "001", "011", "111", "110", "100" } );
  }

  SECTION( "2-bit gray code witnesses m = 4 at k = 1" )
  {
    auto const r = exhaustive_bound_search( 2, 1, 4 );
    CHECK_FALSE( r.none_exists );
  }

  SECTION( "fixing the first codeword finds a witness too" )
  {
    bound_search_options opts;
    opts.fix_first_to_zero = true;
    auto const r = exhaustive_bound_search( 3, 2, 6, opts );
    CHECK_FALSE( r.none_exists );
    CHECK( r.witness.front() == bword( 0, 3 ) );
  }

  SECTION( "budget is enforced up front" )
  {
    bound_search_options opts;
    opts.max_candidates = 100;
    CHECK_THROWS_AS( exhaustive_bound_search( 3, 2, 7, opts ), budget_error );
  }
}

TEST_CASE( "property matrix across the code families" )
{
  for ( unsigned n = 4; n <= 8; ++n )
  {
    CHECK_FALSE( check_preserving( code_spec::binary( n ), 1 ).holds );
    CHECK_FALSE( check_recoverable( code_spec::binary( n ), 1 ).holds );
    CHECK( check_preserving( code_spec::brgc( n ), 1 ).holds );
    CHECK( check_recoverable( code_spec::brgc( n ), 1 ).holds );
    CHECK_FALSE( check_preserving( code_spec::brgc( n ), 2 ).holds );
    CHECK_FALSE( check_recoverable( code_spec::brgc( n ), 2 ).holds );
    CHECK( check_preserving( code_spec::unary_up( n ), n ).holds );
    CHECK( check_recoverable( code_spec::unary_up( n ), n ).holds );
    CHECK( check_preserving( code_spec::unary_down( n ), n ).holds );
    CHECK( check_recoverable( code_spec::unary_down( n ), n ).holds );
  }
}
