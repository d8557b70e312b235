#pragma once

#include "completion.hpp"
#include "errors.hpp"
#include "extension.hpp"
#include "gram.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "regularity.hpp"
#include "word.hpp"
