// Umbrella header: the full differential-algebra engine.
//
// Includes everything except modeljson.hpp, which depends on the vendored
// JSON library and is pulled in explicitly by consumers that read model
// files.
#pragma once

#include "rational.hpp"
#include "monomial.hpp"
#include "context.hpp"
#include "poly.hpp"
#include "diffpoly.hpp"
#include "parser.hpp"
#include "series.hpp"
#include "oracle.hpp"
#include "groebner.hpp"
#include "method1.hpp"
#include "method2.hpp"
#include "jobs.hpp"
