// Command-line front end: encoding, interval words, ternary addition,
// property checks, circuit synthesis, simulation, and the reference tables.
//
// Exit codes: 0 success, 1 property violation or mismatch, 2 usage or parse
// error, 3 budget exceeded.

#include <mcadd/mcadd.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace mcadd;

namespace
{

struct options
{
  std::string format = "text";
  std::uint64_t max_resolutions = default_meta_guard;
  std::uint64_t max_evals = 100'000'000;
  std::size_t max_implicants = 1'000'000;

  std::string code = "hybrid";
  unsigned n = 0;
  unsigned k = 0;
  std::uint64_t m = 0;
  bool recover = false;
  bool fast = false;
  std::string engine = "oracle";
  std::string property;
  std::string construction;
  std::string out_path;
  std::string netlist_path;
  int table = 0;
  std::vector<std::string> words;
  std::uint64_t value = 0;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  bool csv() const { return format == "csv"; }
};

code_spec spec_of( options const& o )
{
  if ( o.n == 0u )
    throw std::invalid_argument( "--n is required" );
  if ( o.code == "binary" )
    return code_spec::binary( o.n );
  if ( o.code == "unary-up" )
    return code_spec::unary_up( o.n );
  if ( o.code == "unary-down" )
    return code_spec::unary_down( o.n );
  if ( o.code == "brgc" )
    return code_spec::brgc( o.n );
  if ( o.k == 0u )
    throw std::invalid_argument( "hybrid requires --k" );
  return code_spec::hybrid( o.n, o.k );
}

tword parse_ternary( std::string const& s, unsigned want_len )
{
  auto const w = tword::parse( s );
  if ( w.size() != want_len )
    throw std::invalid_argument( "expected a word of length " + std::to_string( want_len ) +
                                 ", got " + std::to_string( w.size() ) );
  return w;
}

int cmd_encode( options const& o )
{
  auto const spec = spec_of( o );
  auto const w = encode( spec, o.value );
  if ( o.csv() )
    std::cout << o.value << ',' << pretty( spec, w ) << '\n';
  else
    std::cout << pretty( spec, w ) << '\n';
  return 0;
}

int cmd_decode( options const& o )
{
  auto const spec = spec_of( o );
  auto const w = parse_ternary( o.words.at( 0 ), spec.word_length() );
  auto const b = bword::from_tword( w );
  if ( !b )
    throw decode_error( "word contains metastable trits; decoding needs a stable word" );
  std::uint64_t const v = o.recover ? extended_decode( spec, *b ) : decode( spec, *b );
  if ( o.csv() )
    std::cout << pretty( spec, *b ) << ',' << v << '\n';
  else
    std::cout << v << '\n';
  return 0;
}

int cmd_interval( options const& o )
{
  auto const spec = spec_of( o );
  auto const x = extended_codeword( spec, { o.lo, o.hi } );
  if ( o.csv() )
    std::cout << o.lo << ',' << o.hi << ',' << pretty( spec, x ) << ',' << x.meta_count() << '\n';
  else
    std::cout << pretty( spec, x ) << '\n'
              << "meta trits: " << x.meta_count() << '\n';
  return 0;
}

netlist add_circuit_for( code_spec const& spec )
{
  if ( spec.family() == code_family::hybrid )
    return build_add( spec.n(), spec.k() );
  if ( spec.family() == code_family::binary )
    return build_binary_add( spec.n() );
  throw std::invalid_argument( "add supports --code hybrid and --code binary" );
}

int cmd_add( options const& o )
{
  auto const spec = spec_of( o );
  auto const x = parse_ternary( o.words.at( 0 ), spec.word_length() );
  auto const y = parse_ternary( o.words.at( 1 ), spec.word_length() );
  auto const circuit = add_circuit_for( spec );

  tword sum;
  trit ovf = trit::zero;
  if ( o.engine == "oracle" )
  {
    auto const r = mc_add_oracle( circuit, x, y, o.max_resolutions );
    sum = r.sum;
    ovf = r.ovf;
  }
  else
  {
    netlist nl = circuit;
    if ( o.engine == "mc-circuit" )
    {
      synth_options sopts;
      sopts.max_implicants = o.max_implicants;
      nl = mc_transform( truth_table::from_netlist( circuit ), sopts );
    }
    std::vector<trit> in( x.trits().begin(), x.trits().end() );
    in.insert( in.end(), y.trits().begin(), y.trits().end() );
    auto const out = nl.eval( tword( std::move( in ) ) );
    sum = tword( std::vector<trit>( out.begin(), out.end() - 1 ) );
    ovf = out[out.size() - 1u];
  }

  if ( o.csv() )
    std::cout << x.str() << ',' << y.str() << ',' << pretty( spec, sum ) << ',' << to_char( ovf ) << '\n';
  else
    std::cout << pretty( spec, sum ) << '\n'
              << "ovf: " << to_char( ovf ) << '\n';
  return 0;
}

// check takes --k once when the code parameter and the property threshold
// coincide, or twice (code k first, property k second) when they differ
int cmd_check( options& o, std::vector<unsigned> const& ks )
{
  if ( ks.empty() )
    throw std::invalid_argument( "check requires --k" );
  unsigned const property_k = ks.back();

  if ( o.property == "bound" )
  {
    bound_search_options opts;
    opts.max_candidates = o.max_evals;
    opts.fix_first_to_zero = o.fast;
    auto const r = exhaustive_bound_search( o.n, property_k, o.m, opts );
    if ( r.none_exists )
    {
      std::cout << "no such code (searched " << r.candidates_checked << " candidates)\n";
      return 0;
    }
    std::cout << "witness:";
    for ( auto const& w : r.witness )
    {
      std::cout << ' ' << w.str();
    }
    std::cout << '\n';
    return 1;
  }

  o.k = ks.front();
  auto const spec = spec_of( o );
  if ( o.property == "m-count" )
  {
    bool const ok = check_m_count( spec, property_k );
    std::cout << ( ok ? "holds" : "fails" ) << '\n';
    return ok ? 0 : 1;
  }

  property_report r;
  if ( o.property == "preserving" )
    r = check_preserving( spec, property_k, o.max_evals );
  else if ( o.property == "recoverable" )
    r = check_recoverable( spec, property_k, o.max_evals );
  else
    throw std::invalid_argument( "unknown property '" + o.property + "'" );

  if ( o.csv() )
  {
    std::cout << spec.name() << ',' << o.property << ',' << property_k << ',' << ( r.holds ? 1 : 0 );
    if ( r.witness )
      std::cout << ',' << r.witness->range.lo << ',' << r.witness->range.hi << ',' << r.witness->word.str();
    std::cout << '\n';
  }
  else if ( r.holds )
  {
    std::cout << "holds\n";
    if ( r.extension_verified )
      std::cout << "decoder extension verified: " << ( *r.extension_verified ? "yes" : "NO" ) << '\n';
  }
  else
  {
    std::cout << "fails: interval " << r.witness->range.str() << " word " << r.witness->word.str() << '\n';
  }
  return r.holds ? 0 : 1;
}

int cmd_synth( options const& o )
{
  std::optional<netlist> nl;
  if ( o.construction == "ppc-and" )
    nl = ppc( ppc_op::op_and, o.n );
  else if ( o.construction == "ppc-or" )
    nl = ppc( ppc_op::op_or, o.n );
  else if ( o.construction == "ppc-xor" )
    nl = ppc( ppc_op::op_xor, o.n );
  else if ( o.construction == "brgc-to-bin" )
    nl = brgc_to_bin( o.n );
  else if ( o.construction == "bin-to-brgc" )
    nl = bin_to_brgc( o.n );
  else if ( o.construction == "un-to-bin" )
    nl = un_to_bin( o.k );
  else if ( o.construction == "bin-to-un" )
    nl = bin_to_un( o.k );
  else if ( o.construction == "map" )
    nl = map_circuit( o.k );
  else if ( o.construction == "prefix-adder" )
    nl = prefix_adder( o.n );
  else if ( o.construction == "ripple-adder" )
    nl = ripple_adder( o.n );
  else if ( o.construction == "add" )
    nl = build_add( o.n, o.k );
  else if ( o.construction == "binary-add" )
    nl = build_binary_add( o.n );
  else if ( o.construction == "mux-naive" )
  {
    netlist m;
    auto const a = m.add_input( "a" );
    auto const b = m.add_input( "b" );
    auto const s = m.add_input( "s" );
    m.add_output( m.add_mux( a, b, s ) );
    nl = m;
  }
  else if ( o.construction == "mc-mux" )
  {
    auto const tt = truth_table::from_function( 3, []( bword const& in ) {
      return bword( ( in.bit( 2 ) ? in.bit( 1 ) : in.bit( 0 ) ) ? 1u : 0u, 1 );
    } );
    synth_options sopts;
    sopts.max_implicants = o.max_implicants;
    nl = mc_transform( tt, sopts );
  }
  else
  {
    throw std::invalid_argument( "unknown construction '" + o.construction + "'" );
  }

  if ( !o.out_path.empty() )
    nl->save_file( o.out_path );
  else
    std::cout << nl->save();
  auto const s = nl->stats();
  std::cerr << o.construction << ',' << o.n << ',' << o.k << ',' << s.size << ',' << s.depth << '\n';
  return 0;
}

int cmd_sim( options const& o )
{
  auto const nl = netlist::load_file( o.netlist_path );
  for ( auto const& ws : o.words )
  {
    auto const in = parse_ternary( ws, static_cast<unsigned>( nl.input_count() ) );
    auto const out = nl.eval( in );
    if ( o.csv() )
      std::cout << in.str() << ',' << out.str() << '\n';
    else
      std::cout << out.str() << '\n';
  }
  return 0;
}

int cmd_tables( options const& o )
{
  auto const got = tables::generate( o.table );
  std::cout << got;
  if ( got != tables::fixture( o.table ) )
  {
    std::cerr << "table " << o.table << " does not match the frozen fixture\n";
    return 1;
  }
  return 0;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "addition under metastability: codes, checkers, circuits" };
  app.require_subcommand( 1 );
  options o;

  app.add_option( "--format", o.format, "output format" )->check( CLI::IsMember( { "text", "csv" } ) );
  app.add_option( "--max-resolutions", o.max_resolutions, "cap on metastable trits expanded per word" );
  app.add_option( "--max-evals", o.max_evals, "budget for exhaustive checks and searches" );
  app.add_option( "--max-implicants", o.max_implicants, "ceiling for prime-implicant synthesis" );

  auto const add_spec_flags = [&]( CLI::App* cmd ) {
    cmd->add_option( "--code", o.code, "code family: binary | unary-up | unary-down | brgc | hybrid" )
        ->check( CLI::IsMember( { "binary", "unary-up", "unary-down", "brgc", "hybrid" } ) );
    cmd->add_option( "--n", o.n, "code parameter n" );
    cmd->add_option( "--k", o.k, "code parameter k" );
  };

  auto* enc = app.add_subcommand( "encode", "encode an integer" );
  add_spec_flags( enc );
  enc->add_option( "value", o.value, "integer to encode" )->required();

  auto* dec = app.add_subcommand( "decode", "decode a word" );
  add_spec_flags( dec );
  dec->add_flag( "--recover", o.recover, "use the total decoder extension" );
  dec->add_option( "word", o.words, "word to decode" )->required()->expected( 1 );

  auto* itv = app.add_subcommand( "interval", "extended codeword of an interval" );
  add_spec_flags( itv );
  itv->add_option( "lo", o.lo, "lower endpoint" )->required();
  itv->add_option( "hi", o.hi, "upper endpoint" )->required();

  auto* addc = app.add_subcommand( "add", "add two ternary words" );
  add_spec_flags( addc );
  addc->add_option( "--engine", o.engine, "oracle | circuit | mc-circuit" )
      ->check( CLI::IsMember( { "oracle", "circuit", "mc-circuit" } ) );
  addc->add_option( "words", o.words, "two ternary words" )->required()->expected( 2 );

  std::vector<unsigned> check_ks;
  auto* chk = app.add_subcommand( "check", "run a property check" );
  chk->add_option( "--code", o.code, "code family: binary | unary-up | unary-down | brgc | hybrid" )
      ->check( CLI::IsMember( { "binary", "unary-up", "unary-down", "brgc", "hybrid" } ) );
  chk->add_option( "--n", o.n, "code parameter n" );
  chk->add_option( "--k", check_ks, "property threshold; pass twice to separate the hybrid code k" )
      ->multi_option_policy( CLI::MultiOptionPolicy::TakeAll );
  chk->add_option( "--property", o.property, "preserving | recoverable | m-count | bound" )->required();
  chk->add_option( "--m", o.m, "domain size for --property bound" );
  chk->add_flag( "--fast", o.fast, "bound search: pin the first codeword to all-zero" );

  auto* syn = app.add_subcommand( "synth", "emit a construction as a netlist" );
  syn->add_option( "--n", o.n, "width parameter n" );
  syn->add_option( "--k", o.k, "width parameter k" );
  syn->add_option( "--construction", o.construction,
                   "ppc-and | ppc-or | ppc-xor | brgc-to-bin | bin-to-brgc | un-to-bin | "
                   "bin-to-un | map | prefix-adder | ripple-adder | add | binary-add | "
                   "mux-naive | mc-mux" )
      ->required();
  syn->add_option( "--out", o.out_path, "output file (stdout if omitted)" );

  auto* sim = app.add_subcommand( "sim", "evaluate a netlist on ternary words" );
  sim->add_option( "--netlist", o.netlist_path, "netlist file" )->required();
  sim->add_option( "words", o.words, "input words" )->required();

  auto* tab = app.add_subcommand( "tables", "regenerate a reference table and diff it" );
  tab->add_option( "--table", o.table, "table number 1..4" )->required()->check( CLI::Range( 1, 4 ) );

  // global flags remain usable after the subcommand name
  for ( auto* sc : app.get_subcommands( {} ) )
  {
    sc->fallthrough();
  }

  try
  {
    app.parse( argc, argv );
    if ( app.got_subcommand( enc ) )
      return cmd_encode( o );
    if ( app.got_subcommand( dec ) )
      return cmd_decode( o );
    if ( app.got_subcommand( itv ) )
      return cmd_interval( o );
    if ( app.got_subcommand( addc ) )
      return cmd_add( o );
    if ( app.got_subcommand( chk ) )
      return cmd_check( o, check_ks );
    if ( app.got_subcommand( syn ) )
      return cmd_synth( o );
    if ( app.got_subcommand( sim ) )
      return cmd_sim( o );
    return cmd_tables( o );
  }
  catch ( CLI::ParseError const& e )
  {
    int const code = app.exit( e );
    return code == 0 ? 0 : 2;
  }
  catch ( budget_error const& e )
  {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 3;
  }
  catch ( decode_error const& e )
  {
    std::cerr << e.what() << '\n';
    return 1;
  }
  catch ( std::out_of_range const& e )
  {
    std::cerr << e.what() << '\n';
    return 1;
  }
  catch ( parse_error const& e )
  {
    std::cerr << "parse error";
    if ( e.line > 0 )
      std::cerr << " at line " << e.line;
    std::cerr << ": " << e.what() << '\n';
    return 2;
  }
  catch ( std::invalid_argument const& e )
  {
    std::cerr << e.what() << '\n';
    return 2;
  }
}
