#pragma once

#include "hyperham/absorber.hpp"
#include "hyperham/bitset.hpp"
#include "hyperham/connect.hpp"
#include "hyperham/constructions.hpp"
#include "hyperham/density.hpp"
#include "hyperham/hamilton.hpp"
#include "hyperham/hypergraph.hpp"
#include "hyperham/io.hpp"
#include "hyperham/motifs.hpp"
#include "hyperham/oracle.hpp"
#include "hyperham/rng.hpp"
#include "hyperham/types.hpp"
