#pragma once

#include <fflt/bench.hpp>
#include <fflt/diskeval.hpp>
#include <fflt/fourier.hpp>
#include <fflt/interp.hpp>
#include <fflt/io.hpp>
#include <fflt/kernels.hpp>
#include <fflt/laplace.hpp>
#include <fflt/matrix.hpp>
#include <fflt/partition.hpp>
#include <fflt/random.hpp>
