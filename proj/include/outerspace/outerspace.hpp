#pragma once

#include "outerspace/automorphism.hpp"
#include "outerspace/builders.hpp"
#include "outerspace/current.hpp"
#include "outerspace/diagnostics.hpp"
#include "outerspace/errors.hpp"
#include "outerspace/folding.hpp"
#include "outerspace/io.hpp"
#include "outerspace/lipschitz.hpp"
#include "outerspace/marked_graph.hpp"
#include "outerspace/minima.hpp"
#include "outerspace/parallel.hpp"
#include "outerspace/sampling.hpp"
#include "outerspace/simplex.hpp"
#include "outerspace/whitehead.hpp"
#include "outerspace/word.hpp"
