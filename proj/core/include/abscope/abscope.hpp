#pragma once

#include "abscope/errors.hpp"
#include "abscope/field.hpp"
#include "abscope/geometry.hpp"
#include "abscope/gold.hpp"
#include "abscope/scan.hpp"
#include "abscope/sequence.hpp"
#include "abscope/walsh.hpp"
