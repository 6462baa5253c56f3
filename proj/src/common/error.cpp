/*
   Copyright 2026 The strongconv Authors

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

#include "common/error.hpp"

namespace strongconv {

const char* error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::PoleRegion: return "pole region";
    case ErrorCode::SizeCap: return "size cap exceeded";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Inconsistency: return "internal inconsistency";
    case ErrorCode::NotSelfAdjoint: return "not self-adjoint";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::IncompleteBasis: return "incomplete basis";
    case ErrorCode::Evaluation: return "evaluation error";
    }
    return "unknown error";
}

void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, what);
}

} // namespace strongconv
