# Copyright 2026 The matfhe Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for matfhe."""

from ._matfhe import (
    Ciphertext,
    DivisorNotInvertibleError,
    Error,
    FormatError,
    InvalidArgumentError,
    Key,
    KeySet,
    MismatchError,
    NotInvertibleError,
    ParseError,
    ProtocolError,
    ResourceExhaustedError,
    UnboundInputError,
    decrypt,
    encrypt,
    eval_plain,
    evaluate,
    invertible_probability,
    keygen,
    keyset_gen,
    normalize_formula,
    run_protocol,
    toy_modulus_n,
)

__all__ = [name for name in dir() if not name.startswith("_")]
