#pragma once

// declab: a simulation laboratory for hardware-Trojan attack scenarios on
// channel error-correcting decoders and the stochastic countermeasures
// that obstruct them.

#include "declab/attacker.hpp"
#include "declab/channel.hpp"
#include "declab/codes.hpp"
#include "declab/decoders.hpp"
#include "declab/envelope.hpp"
#include "declab/error.hpp"
#include "declab/gf2.hpp"
#include "declab/linkseal.hpp"
#include "declab/rng.hpp"
#include "declab/sim.hpp"
#include "declab/sim_report.hpp"
#include "declab/stats.hpp"
#include "declab/trojans.hpp"
