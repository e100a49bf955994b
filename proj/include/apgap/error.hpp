// Copyright 2026 The apgap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace apgap {

// Base of every error raised by the library. Callers that only care about
// "something went wrong" catch this; the CLI maps it to exit status 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define APGAP_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                    \
    public:                                                        \
        explicit Name(const std::string& what) : Error(what) {}   \
    }

APGAP_DEFINE_ERROR(NotInvertible);
APGAP_DEFINE_ERROR(DomainError);
APGAP_DEFINE_ERROR(OverflowError);
APGAP_DEFINE_ERROR(InvalidProgression);
APGAP_DEFINE_ERROR(InvalidConfig);
APGAP_DEFINE_ERROR(OutOfScanRange);
APGAP_DEFINE_ERROR(IncompleteEnsemble);
APGAP_DEFINE_ERROR(EmptyInput);
APGAP_DEFINE_ERROR(DegenerateInput);
APGAP_DEFINE_ERROR(InsufficientPoints);
APGAP_DEFINE_ERROR(SingularSystem);
APGAP_DEFINE_ERROR(NonPositiveValue);
APGAP_DEFINE_ERROR(IoError);
APGAP_DEFINE_ERROR(SchemaError);
APGAP_DEFINE_ERROR(CorruptCache);

#undef APGAP_DEFINE_ERROR

}  // namespace apgap
