#pragma once

// Aldebaran (.aut) reader and writer.
//
//   des (<initial>,<#transitions>,<#states>)
//   (<src>,"<label>",<dst>)
//   ...
//
// The labels "tau" and "i" denote the silent action; it is written as "tau".

#include "error.hpp"
#include "lts.hpp"

#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace bbdiv
{

namespace detail
{

inline std::string_view trim( std::string_view s )
{
    while ( !s.empty() && ( s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ) )
        s.remove_prefix( 1 );
    while ( !s.empty() && ( s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ) )
        s.remove_suffix( 1 );
    return s;
}

inline std::size_t parse_number( std::string_view text, std::size_t line, const char* what )
{
    text = trim( text );
    std::size_t value = 0;
    auto [ ptr, ec ] = std::from_chars( text.data(), text.data() + text.size(), value );
    if ( text.empty() || ec != std::errc{} || ptr != text.data() + text.size() )
        throw parse_error( line, std::string( "expected " ) + what + ", got '" + std::string( text ) + "'" );
    return value;
}

} // namespace detail

inline lts parse_aut( std::string_view text )
{
    std::vector<std::string_view> lines;
    for ( std::size_t pos = 0; pos <= text.size(); )
    {
        auto end = text.find( '\n', pos );
        if ( end == std::string_view::npos )
            end = text.size();
        lines.push_back( text.substr( pos, end - pos ) );
        pos = end + 1;
    }

    std::size_t lineno = 0;
    std::size_t header_line = 0;
    std::string_view header;
    for ( ; lineno < lines.size(); ++lineno )
    {
        header = detail::trim( lines[ lineno ] );
        if ( !header.empty() )
        {
            header_line = lineno + 1;
            break;
        }
    }
    if ( header_line == 0 )
        throw parse_error( 1, "missing 'des' header" );
    if ( header.substr( 0, 3 ) != "des" )
        throw parse_error( header_line, "malformed header: expected 'des (<initial>,<#transitions>,<#states>)'" );
    header = detail::trim( header.substr( 3 ) );
    if ( header.size() < 2 || header.front() != '(' || header.back() != ')' )
        throw parse_error( header_line, "malformed header: expected 'des (<initial>,<#transitions>,<#states>)'" );
    header = header.substr( 1, header.size() - 2 );
    auto c1 = header.find( ',' );
    auto c2 = c1 == std::string_view::npos ? c1 : header.find( ',', c1 + 1 );
    if ( c2 == std::string_view::npos || header.find( ',', c2 + 1 ) != std::string_view::npos )
        throw parse_error( header_line, "malformed header: expected three comma-separated numbers" );
    auto initial = detail::parse_number( header.substr( 0, c1 ), header_line, "initial state" );
    auto declared = detail::parse_number( header.substr( c1 + 1, c2 - c1 - 1 ), header_line, "transition count" );
    auto states = detail::parse_number( header.substr( c2 + 1 ), header_line, "state count" );
    if ( states == 0 ? initial != 0 : initial >= states )
        throw parse_error( header_line, "initial state " + std::to_string( initial ) + " out of range" );

    std::vector<std::string> labels{ std::string{ tau_name } };
    auto intern = [ & ]( std::string_view name ) -> label_t {
        if ( name == tau_name || name == "i" )
            return lts::tau;
        for ( std::size_t i = 1; i < labels.size(); ++i )
            if ( labels[ i ] == name )
                return static_cast<label_t>( i );
        labels.emplace_back( name );
        return static_cast<label_t>( labels.size() - 1 );
    };

    auto check_state = [ & ]( std::size_t s, std::size_t line ) {
        if ( s >= states )
            throw parse_error( line, "state " + std::to_string( s ) + " out of range" );
        return static_cast<state_t>( s );
    };

    std::vector<transition> transitions;
    std::size_t found = 0;
    for ( ++lineno; lineno < lines.size(); ++lineno )
    {
        auto line = detail::trim( lines[ lineno ] );
        auto n = lineno + 1;
        if ( line.empty() )
            continue;
        if ( line.size() < 2 || line.front() != '(' || line.back() != ')' )
            throw parse_error( n, "malformed transition: expected '(<src>,\"<label>\",<dst>)'" );
        line = line.substr( 1, line.size() - 2 );
        auto first = line.find( ',' );
        auto last = line.rfind( ',' );
        if ( first == std::string_view::npos || first == last )
            throw parse_error( n, "malformed transition: expected '(<src>,\"<label>\",<dst>)'" );
        auto src = check_state( detail::parse_number( line.substr( 0, first ), n, "source state" ), n );
        auto dst = check_state( detail::parse_number( line.substr( last + 1 ), n, "target state" ), n );
        auto label = detail::trim( line.substr( first + 1, last - first - 1 ) );
        if ( label.size() >= 2 && label.front() == '"' && label.back() == '"' )
            label = label.substr( 1, label.size() - 2 );
        if ( label.empty() )
            throw parse_error( n, "empty action label" );
        if ( label.find( '"' ) != std::string_view::npos )
            throw parse_error( n, "action label contains a double quote" );
        transitions.push_back( { src, intern( label ), dst } );
        ++found;
    }
    if ( found != declared )
        throw parse_error( header_line, "transition count mismatch: header declares " + std::to_string( declared ) +
                                                ", found " + std::to_string( found ) );
    return lts( states, static_cast<state_t>( initial ), std::move( labels ), std::move( transitions ) );
}

inline std::string emit_aut( const lts& l )
{
    std::ostringstream out;
    out << "des (" << l.initial() << ',' << l.transitions().size() << ',' << l.state_count() << ")\n";
    for ( const auto& t : l.transitions() )
        out << '(' << t.src << ",\"" << l.label_name( t.label ) << "\"," << t.dst << ")\n";
    return out.str();
}

inline lts read_aut_file( const std::string& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw parse_error( 0, "cannot open " + path );
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_aut( buffer.str() );
}

} // namespace bbdiv
