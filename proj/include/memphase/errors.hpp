/*
   Copyright 2026 The memphase Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace memphase {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define MEMPHASE_DEFINE_ERROR(Name)            \
    class Name : public Error {                \
    public:                                    \
        using Error::Error;                    \
    }

/// Argument outside the mathematical domain of an operation.
MEMPHASE_DEFINE_ERROR(DomainError);
/// Pointwise autocorrelation requested for white noise.
MEMPHASE_DEFINE_ERROR(WhiteNoiseUndefined);
MEMPHASE_DEFINE_ERROR(QuadratureNonConvergence);
MEMPHASE_DEFINE_ERROR(NotPositiveSemidefinite);
MEMPHASE_DEFINE_ERROR(DimensionMismatch);
MEMPHASE_DEFINE_ERROR(PositionOutOfRange);
MEMPHASE_DEFINE_ERROR(IndexError);
MEMPHASE_DEFINE_ERROR(StepTooCoarse);
MEMPHASE_DEFINE_ERROR(EmptyEnsemble);
/// Malformed configuration; the message carries line/field diagnostics.
MEMPHASE_DEFINE_ERROR(ConfigError);

#undef MEMPHASE_DEFINE_ERROR

} // namespace memphase
