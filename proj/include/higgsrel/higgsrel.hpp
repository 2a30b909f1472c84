#pragma once

// Convenience include for the whole library.

#include <higgsrel/rational.hpp>
#include <higgsrel/poly.hpp>
#include <higgsrel/linalg.hpp>
#include <higgsrel/slice.hpp>
#include <higgsrel/series.hpp>
#include <higgsrel/classes.hpp>
#include <higgsrel/generating.hpp>
#include <higgsrel/sympow.hpp>
#include <higgsrel/localize.hpp>
#include <higgsrel/verify.hpp>
