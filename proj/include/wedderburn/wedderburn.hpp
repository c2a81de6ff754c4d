#pragma once

#include "circulant.hpp"
#include "decomp.hpp"
#include "errors.hpp"
#include "fields.hpp"
#include "json_io.hpp"
#include "numtheory.hpp"
#include "orbits.hpp"
