#pragma once

#include "spa/error.hpp"
#include "spa/term.hpp"
#include "spa/strand.hpp"
#include "spa/parser.hpp"
#include "spa/extract.hpp"
#include "spa/oracle.hpp"
#include "spa/size.hpp"
#include "spa/cost.hpp"
#include "spa/config.hpp"
#include "spa/render.hpp"
