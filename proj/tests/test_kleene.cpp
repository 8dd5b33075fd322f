#include <catch2/catch_amalgamated.hpp>

#include <mcadd/kleene.hpp>

#include <array>
#include <set>

using namespace mcadd;

namespace
{
std::array<trit, 3> const all_trits = { trit::zero, trit::one, trit::meta };
}

TEST_CASE( "basic gate tables" )
{
  // and
  CHECK( trit_and( trit::meta, trit::zero ) == trit::zero );
  CHECK( trit_and( trit::zero, trit::meta ) == trit::zero );
  CHECK( trit_and( trit::meta, trit::one ) == trit::meta );
  CHECK( trit_and( trit::meta, trit::meta ) == trit::meta );
  // or
  CHECK( trit_or( trit::meta, trit::one ) == trit::one );
  CHECK( trit_or( trit::one, trit::meta ) == trit::one );
  CHECK( trit_or( trit::meta, trit::zero ) == trit::meta );
  CHECK( trit_or( trit::meta, trit::meta ) == trit::meta );
  // not
  CHECK( trit_not( trit::meta ) == trit::meta );
  CHECK( trit_not( trit::zero ) == trit::one );
  CHECK( trit_not( trit::one ) == trit::zero );

  SECTION( "stable inputs behave as Boolean logic" )
  {
    for ( bool a : { false, true } )
    {
      for ( bool b : { false, true } )
      {
        auto const ta = a ? trit::one : trit::zero;
        auto const tb = b ? trit::one : trit::zero;
        CHECK( trit_and( ta, tb ) == ( ( a && b ) ? trit::one : trit::zero ) );
        CHECK( trit_or( ta, tb ) == ( ( a || b ) ? trit::one : trit::zero ) );
      }
    }
  }
}

TEST_CASE( "gate_eval dispatch and arity" )
{
  std::array<trit, 2> two = { trit::meta, trit::zero };
  std::array<trit, 1> one = { trit::meta };
  CHECK( gate_eval( gate_kind::gate_and, two ) == trit::zero );
  CHECK( gate_eval( gate_kind::gate_not, one ) == trit::meta );
  CHECK_THROWS_AS( gate_eval( gate_kind::gate_and, one ), std::invalid_argument );
  CHECK_THROWS_AS( gate_eval( gate_kind::gate_not, two ), std::invalid_argument );
  CHECK_THROWS_AS( gate_eval( gate_kind::gate_or, std::span<trit const>{} ), std::invalid_argument );
}

TEST_CASE( "gates are monotone in the information order" )
{
  // replacing a stable input by M never flips a stable output to the other
  // stable value
  auto const le = []( trit a, trit b ) { return a == b || b == trit::meta; };
  for ( auto a : all_trits )
  {
    for ( auto b : all_trits )
    {
      CHECK( le( trit_and( a, b ), trit_and( trit::meta, b ) ) );
      CHECK( le( trit_and( a, b ), trit_and( a, trit::meta ) ) );
      CHECK( le( trit_or( a, b ), trit_or( trit::meta, b ) ) );
      CHECK( le( trit_or( a, b ), trit_or( a, trit::meta ) ) );
    }
    CHECK( le( trit_not( a ), trit_not( trit::meta ) ) );
  }
}

TEST_CASE( "word parsing and printing" )
{
  auto const w = tword::parse( "01MX" );
  REQUIRE( w.size() == 4u );
  CHECK( w[0] == trit::zero );
  CHECK( w[1] == trit::one );
  CHECK( w[2] == trit::meta );
  CHECK( w[3] == trit::meta );
  CHECK( w.str() == "01MM" );
  CHECK( w.str( 'X' ) == "01XX" );
  CHECK( w.meta_count() == 2u );
  CHECK( !w.is_stable() );
  CHECK( tword::parse( "01101 011" ) == tword::parse( "01101011" ) );
  CHECK_THROWS_AS( tword::parse( "012" ), parse_error );

  auto const b = bword::parse( "0111" );
  CHECK( b.value() == 7u );
  CHECK( b.size() == 4u );
  CHECK( b.str() == "0111" );
  CHECK( b.bit( 0 ) == false );
  CHECK( b.bit( 3 ) == true );
  CHECK( ( ~b ).str() == "1000" );
  CHECK( bword::concat( bword::parse( "01" ), bword::parse( "11" ) ).str() == "0111" );
  CHECK( b.slice( 1, 2 ).str() == "11" );
  CHECK_THROWS_AS( bword::parse( "0120" ), parse_error );
}

TEST_CASE( "superposition" )
{
  CHECK( superpose( tword::parse( "100" ), tword::parse( "111" ) ) == tword::parse( "1MM" ) );
  CHECK( superpose( tword::parse( "0011" ), tword::parse( "0100" ) ) == tword::parse( "0MMM" ) );
  CHECK_THROWS_AS( superpose( tword::parse( "10" ), tword::parse( "101" ) ), std::invalid_argument );

  SECTION( "commutative, associative, idempotent over all trit pairs/triples" )
  {
    for ( auto a : all_trits )
    {
      CHECK( superpose( a, a ) == a );
      for ( auto b : all_trits )
      {
        CHECK( superpose( a, b ) == superpose( b, a ) );
        for ( auto c : all_trits )
        {
          CHECK( superpose( superpose( a, b ), c ) == superpose( a, superpose( b, c ) ) );
        }
      }
    }
  }

  SECTION( "superpose_all" )
  {
    std::vector<tword> xs = { tword::parse( "0101" ), tword::parse( "0110" ) };
    CHECK( superpose_all( xs ) == tword::parse( "01MM" ) );
    xs = { tword::parse( "0100" ), tword::parse( "0101" ), tword::parse( "0110" ), tword::parse( "0111" ) };
    CHECK( superpose_all( xs ) == tword::parse( "01MM" ) );
    xs = { tword::parse( "100" ), tword::parse( "010" ), tword::parse( "001" ) };
    CHECK( superpose_all( xs ) == tword::parse( "MMM" ) );
    CHECK_THROWS_AS( superpose_all( std::span<tword const>{} ), std::invalid_argument );
  }
}

TEST_CASE( "resolution" )
{
  auto rs = resolve( tword::parse( "1MM" ) );
  REQUIRE( rs.size() == 4u );
  CHECK( rs[0] == bword::parse( "100" ) );
  CHECK( rs[1] == bword::parse( "101" ) );
  CHECK( rs[2] == bword::parse( "110" ) );
  CHECK( rs[3] == bword::parse( "111" ) );

  rs = resolve( tword::parse( "0110" ) );
  REQUIRE( rs.size() == 1u );
  CHECK( rs[0] == bword::parse( "0110" ) );

  rs = resolve( tword::parse( "MM" ) );
  REQUIRE( rs.size() == 4u );
  CHECK( rs[3] == bword::parse( "11" ) );

  CHECK_THROWS_AS( resolve( tword( 30, trit::meta ), 20 ), budget_error );
}

TEST_CASE( "resolve/superpose round trips" )
{
  // superpose_all(resolve(x)) == x, and resolutions of a superposition cover
  // the resolutions of both operands
  auto const words = { "MM01", "0110", "M10M", "1111", "MMMM" };
  for ( auto s : words )
  {
    auto const x = tword::parse( s );
    auto const rs = resolve( x );
    std::vector<tword> ts;
    for ( auto const& r : rs )
    {
      ts.push_back( r.to_tword() );
    }
    CHECK( superpose_all( ts ) == x );
  }

  for ( auto sx : words )
  {
    for ( auto sy : words )
    {
      auto const x = tword::parse( sx );
      auto const y = tword::parse( sy );
      auto const both = resolve( superpose( x, y ) );
      std::set<bword> super( both.begin(), both.end() );
      for ( auto const& r : resolve( x ) )
      {
        CHECK( super.count( r ) == 1u );
      }
      for ( auto const& r : resolve( y ) )
      {
        CHECK( super.count( r ) == 1u );
      }
    }
  }
}

TEST_CASE( "metastable closure of functions" )
{
  auto const mux = []( bword const& in ) {
    bool const a = in.bit( 0 ), b = in.bit( 1 ), s = in.bit( 2 );
    return bword( ( s ? b : a ) ? 1u : 0u, 1 );
  };
  CHECK( closure_eval( mux, tword::parse( "11M" ) ) == tword::parse( "1" ) );
  CHECK( closure_eval( mux, tword::parse( "10M" ) ) == tword::parse( "M" ) );
  CHECK( closure_eval( mux, tword::parse( "101" ) ) == tword::parse( "0" ) );

  auto const xor2 = []( bword const& in ) {
    return bword( ( in.bit( 0 ) ^ in.bit( 1 ) ) ? 1u : 0u, 1 );
  };
  CHECK( closure_eval( xor2, tword::parse( "M0" ) ) == tword::parse( "M" ) );

  SECTION( "stable input reduces to plain evaluation" )
  {
    for ( std::uint64_t v = 0; v < 8u; ++v )
    {
      auto const x = bword( v, 3 ).to_tword();
      CHECK( closure_eval( mux, x ) == mux( bword( v, 3 ) ).to_tword() );
    }
  }

  SECTION( "enumeration limit" )
  {
    CHECK_THROWS_AS( closure_eval( mux, tword::parse( "MMM" ), 2 ), budget_error );
  }
}
