#pragma once

// Breadth-first formula enumeration over one system, keeping one formula per
// denotation.

#include "eval.hpp"
#include "formula.hpp"
#include "lts.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace bbdiv
{

struct enumeration_options
{
    std::size_t depth = 3;
    std::size_t width = 2; // conjunction width
    bool with_div = true;
    bool with_sdiv = true;
    bool with_weak_strong = true; // WU and SU besides JU
};

inline std::vector<formula> enumerate_formulas( const lts& l, const enumeration_options& opt = {} )
{
    evaluator e( l );
    std::map<state_set, formula> seen;
    std::vector<formula> all;
    auto offer = [ & ]( const formula& f ) {
        if ( seen.try_emplace( e.denote( f ), f ).second )
            all.push_back( f );
    };
    offer( tt() );
    std::size_t level_begin = 0;
    for ( std::size_t d = 0; d < opt.depth; ++d )
    {
        auto known = all;
        auto level_end = known.size();
        auto is_new = [ & ]( std::size_t i ) { return i >= level_begin && i < level_end; };
        for ( std::size_t i = 0; i < known.size(); ++i )
        {
            if ( !is_new( i ) )
                continue;
            offer( neg( known[ i ] ) );
            if ( opt.with_div )
                offer( div( known[ i ] ) );
            if ( opt.with_sdiv )
                offer( sdiv( known[ i ] ) );
        }
        for ( std::size_t i = 0; i < known.size(); ++i )
            for ( std::size_t j = 0; j < known.size(); ++j )
            {
                if ( !is_new( i ) && !is_new( j ) )
                    continue;
                if ( opt.width >= 2 && i < j )
                    offer( conj( { known[ i ], known[ j ] } ) );
                for ( const auto& a : l.labels() )
                {
                    offer( just_before( known[ i ], a, known[ j ] ) );
                    if ( opt.with_weak_strong )
                    {
                        offer( weak_until( known[ i ], a, known[ j ] ) );
                        offer( strong_until( known[ i ], a, known[ j ] ) );
                    }
                }
            }
        level_begin = level_end;
    }
    return all;
}

} // namespace bbdiv
