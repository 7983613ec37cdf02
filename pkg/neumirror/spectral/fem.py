# -*- coding: utf-8 -*-

# Copyright 2026,  The neumirror developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from neumirror.core.exceptions import InputError
from neumirror.spectral.exceptions import NoConvergence
from neumirror.spectral.models import TriMesh

logger = logging.getLogger(__name__)

MASS_PATTERN = (np.ones((3, 3)) + np.eye(3)) / 12.0
MAX_ITERATIONS = 10000


def element_matrices(corners):
    """
    P1 stiffness and consistent mass matrices of a single triangle.
    """
    mesh = TriMesh(corners, [[0, 1, 2]], 3, 1.0)
    mesh.validate()
    K, M = _element_blocks(mesh, np.arange(1))
    return K[0], M[0]


def _element_blocks(mesh, idx):
    grads = mesh.gradients[idx]
    areas = mesh.areas[idx]
    K = areas[:, None, None] * np.einsum('mid,mjd->mij', grads, grads)
    M = areas[:, None, None] * MASS_PATTERN[None, :, :]
    return K, M


def assemble_fem(mesh, threads=1):
    """
    Global stiffness K and mass M.  Elements are split into contiguous chunks, one
    per worker; the triplets are concatenated in element order before summation.
    """
    mesh.validate()
    n = mesh.n_vertices
    tris = mesh.triangles
    chunks = [c for c in np.array_split(np.arange(len(tris)), max(int(threads), 1)) if len(c)]
    with ThreadPoolExecutor(max_workers=len(chunks)) as executor:
        blocks = list(executor.map(lambda c: _element_blocks(mesh, c), chunks))

    K_data = np.concatenate([b[0] for b in blocks]).ravel()
    M_data = np.concatenate([b[1] for b in blocks]).ravel()
    rows = np.repeat(tris, 3, axis=1).ravel()
    cols = np.tile(tris, (1, 3)).ravel()
    K = sparse.coo_matrix((K_data, (rows, cols)), shape=(n, n)).tocsr()
    M = sparse.coo_matrix((M_data, (rows, cols)), shape=(n, n)).tocsr()
    # exact symmetry
    K = 0.5 * (K + K.T)
    M = 0.5 * (M + M.T)
    return K, M


def eigen_residuals(K, M, mu, vectors):
    """
    Relative residuals ||Kv - mu Mv|| / ||Mv|| and the M-orthonormality defect.
    """
    Mv = M @ vectors
    res = np.linalg.norm(K @ vectors - Mv * mu[None, :], axis=0) / np.linalg.norm(Mv, axis=0)
    gram = vectors.T @ Mv
    return res, float(np.max(np.abs(gram - np.eye(len(mu)))))


def eigen_smallest(K, M, k=6):
    """
    The k smallest generalized eigenpairs of K v = mu M v by shift-invert Lanczos
    with a small negative shift, sorted ascending and M-orthonormal.
    """
    if k < 3:
        raise InputError('Need at least three eigenpairs, got k={0}'.format(k))
    if k >= K.shape[0]:
        raise InputError('k={0} is not below the number of vertices'.format(k))
    sigma = -1e-3 * K.diagonal().sum() / M.diagonal().sum()
    v0 = np.ones(K.shape[0])
    try:
        mu, vectors = eigsh(K, k=k, M=M, sigma=sigma, which='LM', v0=v0,
                            maxiter=MAX_ITERATIONS)
    except ArpackNoConvergence as e:
        raise NoConvergence('{0} of {1} eigenpairs converged'.format(len(e.eigenvalues), k))

    order = np.argsort(mu)
    mu = mu[order]
    vectors = vectors[:, order]
    # M-orthonormalize; the double eigenvalues of symmetric domains need it
    gram = vectors.T @ (M @ vectors)
    vectors = vectors @ np.linalg.inv(np.linalg.cholesky(gram)).T
    # deterministic sign: largest entry positive
    peaks = vectors[np.argmax(np.abs(vectors), axis=0), np.arange(k)]
    vectors = vectors * np.sign(peaks)[None, :]
    return mu, vectors
