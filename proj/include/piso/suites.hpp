#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "piso/io.hpp"

namespace piso::suites {

// pilem clem cthm cathm functor module-tool invariance univthm proposition
const std::vector< std::string > & suite_names ();

struct SuiteConfig
{
    std::string    suite  = "all";
    std::size_t    trials = 100;
    std::size_t    dim    = 4;       // largest dimension drawn; [1, 16]
    std::uint64_t  seed   = 0;
    Tolerance      tol;
    unsigned       jobs   = 1;

    // replay one trial from its derived seed instead of running `trials`
    std::optional< std::uint64_t > trial_seed;

    // throws InvalidValue
    void validate () const;
};

struct Counterexample
{
    std::uint64_t  trial = 0;
    std::uint64_t  seed  = 0;   // per-trial seed; replays with --trial-seed
    std::string    message;
    io::Json       inputs;
};

struct Check
{
    std::string                   name;
    std::size_t                   evaluated = 0;
    std::size_t                   failures  = 0;
    double                        max_residual = 0;
    std::vector< Counterexample > counterexamples;   // earliest trials first, at most 3

    bool passed () const { return failures == 0; }
};

struct SuiteReport
{
    std::string           name;
    std::vector< Check >  checks;
    double                seconds = 0;

    bool passed () const;
    const Check * find ( const std::string & check ) const;
};

struct Report
{
    SuiteConfig                 config;
    std::vector< SuiteReport >  suites;

    bool passed () const;
    const SuiteReport * find ( const std::string & suite ) const;

    // timing is left out unless asked for, so equal configs give equal bytes
    io::Json    to_json ( bool timing = false ) const;
    std::string table () const;
};

// throws InvalidValue for a bad config
Report run ( const SuiteConfig & config );

}// namespace piso::suites
