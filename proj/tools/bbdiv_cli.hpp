#pragma once

// The bbdiv command line. run() takes the arguments after the program name
// and returns the process exit code.
//
//   check        0 equivalent, 1 inequivalent
//   eval         0 true, 1 false
//   crosscheck   0 all systems OK, 1 some discrepancy
//   any command  2 user error, 3 the decision procedures disagree

#include "bbdiv/bbdiv.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace bbdiv::cli
{

enum exit_code : int
{
    ok = 0,
    negative = 1,
    user_error = 2,
    disagreement = 3
};

namespace detail
{

inline state_t state_arg( const lts& l, std::size_t s )
{
    if ( s >= l.state_count() )
        throw precondition_error( "state " + std::to_string( s ) + " out of range" );
    return static_cast<state_t>( s );
}

inline std::string inline_partition( const partition& p )
{
    std::string out;
    for ( const auto& block : p.blocks() )
    {
        out += out.empty() ? "{" : " {";
        for ( std::size_t i = 0; i < block.size(); ++i )
            out += ( i ? "," : "" ) + std::to_string( block[ i ] );
        out += '}';
    }
    return out;
}

// The reference engine where it applies; otherwise nothing.
inline std::optional<partition> reference_engine( const lts& l, bool with_divergence, std::size_t bound )
{
    if ( l.state_count() > bound )
        return std::nullopt;
    return gfp_equivalence( l, with_divergence, bound );
}

inline partition decide( const lts& l, bool with_divergence, std::size_t bound )
{
    auto p = refine_to_coarsest( l, with_divergence );
    if ( auto q = reference_engine( l, with_divergence, bound ); q && !( *q == p ) )
        throw internal_error( "refinement and fixpoint engines disagree" );
    return p;
}

// The conditions a computed equivalence must satisfy, restricted to the given
// source states. Enumerating checkers are skipped beyond the bound.
inline std::vector<condition_verdict> certify( const lts& l, const partition& p, bool with_divergence,
                                               std::size_t bound, std::optional<state_set> sources,
                                               std::vector<condition_id>* skipped = nullptr )
{
    auto r = relation::of_partition( p );
    check_options opt{ bound, std::move( sources ) };
    std::vector<condition_verdict> out;
    for ( auto c : all_conditions )
    {
        if ( !with_divergence && c != condition_id::T )
            continue;
        if ( needs_lasso_bound( c ) && l.state_count() > bound )
        {
            if ( skipped )
                skipped->push_back( c );
            continue;
        }
        out.push_back( check_condition( l, r, c, opt ) );
    }
    return out;
}

inline int cmd_check( const std::string& file, std::size_t s_arg, std::size_t t_arg, bool plain,
                      std::size_t bound, std::ostream& out )
{
    auto l = read_aut_file( file );
    auto s = state_arg( l, s_arg );
    auto t = state_arg( l, t_arg );
    if ( bound > max_lasso_bound )
        throw precondition_error( "lasso bound " + std::to_string( bound ) + " exceeds the supported maximum of " +
                                  std::to_string( max_lasso_bound ) );
    auto p = decide( l, !plain, bound );
    if ( p.same_block( s, t ) )
    {
        auto block = p.members( p.block_of( s ) );
        std::vector<condition_id> skipped;
        auto verdicts = certify( l, p, !plain, bound, block, &skipped );
        out << "equivalent\n";
        out << "witness block:";
        block.for_each( [ & ]( state_t x ) { out << ' ' << x; } );
        out << '\n';
        for ( const auto& v : verdicts )
        {
            if ( !v.holds )
                throw internal_error( "witness fails " + std::string( condition_name( v.id ) ) + ": " +
                                      format_counterexample( l, *v.failure ) );
            out << "  " << condition_name( v.id ) << " holds\n";
        }
        for ( auto c : skipped )
            out << "  " << condition_name( c ) << " skipped(bound)\n";
        return ok;
    }
    formula_synthesizer synth( l, !plain );
    auto f = synth.distinguishing( s, t );
    evaluator e( l );
    if ( !e.holds( s, f ) || e.holds( t, f ) )
        throw internal_error( "distinguishing formula does not separate the states" );
    out << "inequivalent\n";
    out << "formula: " << to_string( f ) << '\n';
    return negative;
}

inline void write_text( const std::string& path, const std::string& text )
{
    std::ofstream file( path, std::ios::binary );
    if ( !file )
        throw precondition_error( "cannot write " + path );
    file << text;
}

inline int cmd_minimize( const std::string& file, bool plain, const std::string& output, std::ostream& out )
{
    auto l = read_aut_file( file );
    auto q = quotient( l, decide( l, !plain, default_lasso_bound ) );
    if ( output.empty() )
        out << emit_aut( q );
    else
        write_text( output, emit_aut( q ) );
    return ok;
}

inline int cmd_partition( const std::string& file, bool plain, std::ostream& out )
{
    auto l = read_aut_file( file );
    out << format_partition( decide( l, !plain, default_lasso_bound ) );
    return ok;
}

inline int cmd_conditions( const std::string& file, const std::string& rel_file, bool symmetrize, std::size_t bound,
                           std::ostream& out )
{
    auto l = read_aut_file( file );
    auto r = read_relation_file( rel_file, l.state_count() );
    if ( symmetrize )
        r = symmetric_closure( r );
    check_options opt{ bound, std::nullopt };
    for ( auto c : all_conditions )
    {
        out << condition_name( c ) << std::string( 6 - condition_name( c ).size(), ' ' );
        try
        {
            auto v = check_condition( l, r, c, opt );
            if ( v.holds )
                out << "holds\n";
            else
                out << "fails  " << format_counterexample( l, *v.failure ) << '\n';
        }
        catch ( const bound_exceeded& )
        {
            out << "skipped(bound)\n";
        }
    }
    out << "stuttering property " << ( has_stuttering_property( l, r ) ? "holds" : "fails" ) << '\n';
    out << "symmetric " << ( r.is_symmetric() ? "yes" : "no" ) << '\n';
    return ok;
}

inline int cmd_eval( const std::string& file, std::size_t state, const std::string& text, std::ostream& out )
{
    auto l = read_aut_file( file );
    auto f = parse_formula( text );
    bool value = eval( l, state_arg( l, state ), f );
    out << ( value ? "true" : "false" ) << '\n';
    return value ? ok : negative;
}

inline int cmd_distinguish( const std::string& file, std::size_t s, std::size_t t, bool plain, std::ostream& out )
{
    auto l = read_aut_file( file );
    formula_synthesizer synth( l, !plain );
    auto f = synth.distinguishing( state_arg( l, s ), state_arg( l, t ) );
    out << to_string( f ) << '\n';
    return ok;
}

// Every check that ties the characterisations together, on one system.
// Returns the first discrepancy found, if any.
inline std::optional<std::string> crosscheck_system( const lts& l, generator& gen, std::size_t bound )
{
    std::vector<partition> results;
    for ( bool with_divergence : { true, false } )
    {
        auto p = refine_to_coarsest( l, with_divergence );
        if ( auto q = reference_engine( l, with_divergence, bound ); q && !( *q == p ) )
            return std::string( with_divergence ? "divergence-sensitive" : "plain" ) + " engines disagree";
        for ( const auto& v : certify( l, p, with_divergence, bound, std::nullopt ) )
            if ( !v.holds )
                return "equivalence fails " + std::string( condition_name( v.id ) ) + ": " +
                       format_counterexample( l, *v.failure );

        formula_synthesizer synth( l, with_divergence );
        evaluator e( l );
        auto blocks = p.blocks();
        for ( block_t x = 0; x < blocks.size(); ++x )
        {
            auto chi = synth.characteristic( blocks[ x ].front() );
            if ( !( e.denote( chi ) == p.members( x ) ) )
                return "characteristic formula of block " + std::to_string( x ) + " is wrong";
            for ( block_t y = 0; y < blocks.size(); ++y )
            {
                if ( x == y )
                    continue;
                auto f = synth.distinguishing( blocks[ x ].front(), blocks[ y ].front() );
                if ( !e.holds( blocks[ x ].front(), f ) || e.holds( blocks[ y ].front(), f ) )
                    return "distinguishing formula for blocks " + std::to_string( x ) + " and " +
                           std::to_string( y ) + " does not separate them";
            }
        }
        results.push_back( std::move( p ) );
    }
    if ( !results[ 0 ].refines( results[ 1 ] ) )
        return "divergence-sensitive equivalence is not finer than the plain one";
    if ( !has_stuttering_property( l, relation::of_partition( results[ 0 ] ) ) )
        return "equivalence lacks the stuttering property";

    evaluator e( l );
    for ( const auto& f : enumerate_formulas( l, { 1, 2, true, true, true } ) )
    {
        for ( auto id : all_identities )
            if ( identity_applies( f, id ) && !( e.denote( f ) == e.denote( expand_identity( f, id ) ) ) )
                return "identity rewrite changes the meaning of " + to_string( f );
        if ( in_logic( f, logic_id::U_DIV ) && !( e.denote( f ) == e.denote( translate_until_to_jb( f ) ) ) )
            return "translation changes the meaning of " + to_string( f );
    }

    if ( l.state_count() <= bound )
        for ( std::size_t k = 0; k < 8; ++k )
        {
            auto r = gen.sample_relation( l, results[ 0 ], results[ 1 ], k );
            auto report = check_conditions( l, r, all_conditions, { bound, std::nullopt } );
            if ( auto broken = lattice_violations( report ); !broken.empty() )
                return std::string( "sampled relation satisfies " ) + std::string( condition_name( broken[ 0 ].first ) ) +
                       " but not " + std::string( condition_name( broken[ 0 ].second ) );
        }
    return std::nullopt;
}

inline int cmd_crosscheck( std::size_t random, std::uint64_t seed, std::size_t max_states,
                           const std::vector<std::string>& files, const std::string& emit_dir, std::ostream& out )
{
    generator gen( seed );
    std::size_t passed = 0;
    std::size_t total = 0;
    auto report = [ & ]( const std::string& name, const lts& l, const std::optional<std::string>& problem ) {
        ++total;
        if ( !problem )
        {
            ++passed;
            out << name << ": OK partition " << inline_partition( refine_to_coarsest( l, true ) ) << '\n';
            return;
        }
        auto path = ( std::filesystem::path( emit_dir ) / ( "crosscheck-failure-" + std::to_string( total ) + ".aut" ) )
                            .string();
        write_text( path, emit_aut( l ) );
        out << name << ": FAIL " << *problem << " (written to " << path << ")\n";
    };
    for ( const auto& file : files )
    {
        auto l = read_aut_file( file );
        report( file, l, crosscheck_system( l, gen, default_lasso_bound ) );
    }
    for ( std::size_t i = 0; i < random; ++i )
    {
        auto l = gen.random_lts( max_states, 0.4 );
        report( "random " + std::to_string( i ), l, crosscheck_system( l, gen, default_lasso_bound ) );
    }
    out << passed << '/' << total << " OK\n";
    return passed == total ? ok : negative;
}

} // namespace detail

inline int run( std::vector<std::string> args, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Branching bisimilarity with explicit divergence", "bbdiv" };
    app.require_subcommand( 1 );

    std::string file, rel_file, output, formula_text, emit_dir = ".";
    std::size_t s = 0, t = 0, state = 0, bound = default_lasso_bound, random = 0, max_states = 6;
    std::uint64_t seed = default_seed();
    bool plain = false, symmetrize = false;
    std::vector<std::string> files;

    auto* check = app.add_subcommand( "check", "Decide whether two states are equivalent" );
    check->add_option( "file", file, "Aldebaran file" )->required();
    check->add_option( "s", s )->required();
    check->add_option( "t", t )->required();
    check->add_flag( "--plain", plain, "Ignore divergence" );
    check->add_option( "--lasso-bound", bound, "Largest system for the exhaustive engines" );

    auto* minimize = app.add_subcommand( "minimize", "Quotient by the equivalence" );
    minimize->add_option( "file", file )->required();
    minimize->add_flag( "--plain", plain );
    minimize->add_option( "-o", output, "Output file (default stdout)" );

    auto* part = app.add_subcommand( "partition", "Print the equivalence classes" );
    part->add_option( "file", file )->required();
    part->add_flag( "--plain", plain );

    auto* conditions = app.add_subcommand( "conditions", "Check every condition on a relation" );
    conditions->add_option( "file", file )->required();
    conditions->add_option( "rel", rel_file, "Relation file" )->required();
    conditions->add_flag( "--symmetrize", symmetrize, "Add the inverse pairs first" );
    conditions->add_option( "--lasso-bound", bound );

    auto* ev = app.add_subcommand( "eval", "Evaluate a formula at a state" );
    ev->add_option( "file", file )->required();
    ev->add_option( "state", state )->required();
    ev->add_option( "formula", formula_text )->required();

    auto* distinguish = app.add_subcommand( "distinguish", "Print a formula separating two states" );
    distinguish->add_option( "file", file )->required();
    distinguish->add_option( "s", s )->required();
    distinguish->add_option( "t", t )->required();
    distinguish->add_flag( "--plain", plain );

    auto* cross = app.add_subcommand( "crosscheck", "Check that all characterisations agree" );
    cross->add_option( "--random", random, "Number of random systems" );
    cross->add_option( "--seed", seed );
    cross->add_option( "--max-states", max_states )->check( CLI::PositiveNumber );
    cross->add_option( "--emit-dir", emit_dir, "Where failing systems are written" );
    cross->add_option( "files", files );

    try
    {
        std::reverse( args.begin(), args.end() );
        app.parse( std::move( args ) );
    }
    catch ( const CLI::ParseError& e )
    {
        auto code = app.exit( e, out, err );
        return code == 0 ? ok : user_error;
    }

    try
    {
        if ( *check )
            return detail::cmd_check( file, s, t, plain, bound, out );
        if ( *minimize )
            return detail::cmd_minimize( file, plain, output, out );
        if ( *part )
            return detail::cmd_partition( file, plain, out );
        if ( *conditions )
            return detail::cmd_conditions( file, rel_file, symmetrize, bound, out );
        if ( *ev )
            return detail::cmd_eval( file, state, formula_text, out );
        if ( *distinguish )
            return detail::cmd_distinguish( file, s, t, plain, out );
        if ( *cross )
            return detail::cmd_crosscheck( random, seed, max_states, files, emit_dir, out );
    }
    catch ( const internal_error& e )
    {
        err << "bbdiv: internal error: " << e.what() << '\n';
        return disagreement;
    }
    catch ( const std::exception& e )
    {
        err << "bbdiv: " << e.what() << '\n';
        return user_error;
    }
    return user_error;
}

} // namespace bbdiv::cli
