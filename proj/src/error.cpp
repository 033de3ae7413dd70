/*
 * Copyright 2026 The pgsynth Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pgsynth/error.hpp"

namespace pgsynth {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::UniverseMismatch: return "UniverseMismatch";
    case ErrorKind::InvalidUniverse: return "InvalidUniverse";
    case ErrorKind::NonSymmetricInitialMarking: return "NonSymmetricInitialMarking";
    case ErrorKind::IllTypedArc: return "IllTypedArc";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::NotEnabled: return "NotEnabled";
    case ErrorKind::GuardFalse: return "GuardFalse";
    case ErrorKind::CyclicFlow: return "CyclicFlow";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::MultipleEnvironmentTokens: return "MultipleEnvironmentTokens";
    case ErrorKind::NoTop: return "NoTop";
    case ErrorKind::NotEnabledInDS: return "NotEnabledInDS";
    case ErrorKind::TopPresent: return "TopPresent";
    case ErrorKind::UnsafeNet: return "UnsafeNet";
    case ErrorKind::UnknownSubclass: return "UnknownSubclass";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::InvalidAssignment: return "InvalidAssignment";
    case ErrorKind::NonTotalGame: return "NonTotalGame";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
    case ErrorKind::NotWinning: return "NotWinning";
    case ErrorKind::AssignmentMismatch: return "AssignmentMismatch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::ModelAnomaly: return "ModelAnomaly";
    }
    return "Unknown";
}

} // namespace pgsynth
