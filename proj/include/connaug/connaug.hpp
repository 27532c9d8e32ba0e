#pragma once

#include "connaug/rational.hpp"
#include "connaug/instance.hpp"
#include "connaug/flow.hpp"
#include "connaug/verify.hpp"
#include "connaug/bisets.hpp"
#include "connaug/rooted.hpp"
#include "connaug/cover.hpp"
#include "connaug/pipeline.hpp"
#include "connaug/oracle.hpp"
#include "connaug/generator.hpp"
