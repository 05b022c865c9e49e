#pragma once

// Umbrella header: Doppler-resilient Golay waveform construction,
// verification, ambiguity analysis and point-target simulation.

#include "dopwave/ambiguity.hpp"
#include "dopwave/laurent.hpp"
#include "dopwave/radarsim.hpp"
#include "dopwave/rng.hpp"
#include "dopwave/sequences.hpp"
#include "dopwave/serialize.hpp"
#include "dopwave/trains.hpp"
#include "dopwave/version.hpp"
