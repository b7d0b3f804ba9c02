/**
 * Toy encoder-decoder with attention, written against tfjs core ops so the
 * teacher-forced scoring, greedy decoding and training loop share one
 * forward pass. Sizes are deliberately small; the vocabulary comes from the
 * training data.
 */
import * as tf from '@tensorflow/tfjs';

import { Instance, tokensOf } from './data.js';
import { Rng } from './rng.js';
import { Vocab } from './vocab.js';

export interface ModelConfig {
  embedDim: number;
  hiddenDim: number;
  seed: number;
  initStd?: number;
}

export const DEFAULT_MODEL: Omit<ModelConfig, 'seed'> = {
  embedDim: 32,
  hiddenDim: 64,
  initStd: 0.08,
};

export const MAX_DECODE_LEN = 64;

interface GruParams {
  wz: tf.Variable; uz: tf.Variable; bz: tf.Variable;
  wr: tf.Variable; ur: tf.Variable; br: tf.Variable;
  wn: tf.Variable; un: tf.Variable; bn: tf.Variable;
}

interface Packed {
  ids: tf.Tensor2D;   // [B, L] int32
  mask: tf.Tensor2D;  // [B, L] float32, 1 for real tokens
  lengths: number[];
}

function pack(seqs: number[][], padId: number): Packed {
  const batch = seqs.length;
  const maxLen = Math.max(1, ...seqs.map((s) => s.length));
  const ids = new Int32Array(batch * maxLen).fill(padId);
  const mask = new Float32Array(batch * maxLen);
  seqs.forEach((seq, b) => {
    seq.forEach((id, t) => {
      ids[b * maxLen + t] = id;
      mask[b * maxLen + t] = 1;
    });
  });
  return {
    ids: tf.tensor2d(ids, [batch, maxLen], 'int32'),
    mask: tf.tensor2d(mask, [batch, maxLen], 'float32'),
    lengths: seqs.map((s) => s.length),
  };
}

export class Seq2SeqModel {
  readonly vocab: Vocab;
  readonly config: ModelConfig;
  private readonly emb: tf.Variable;
  private readonly enc: GruParams;
  private readonly dec: GruParams;
  private readonly wa: tf.Variable;
  private readonly wc: tf.Variable;
  private readonly bc: tf.Variable;
  private readonly wo: tf.Variable;
  private readonly bo: tf.Variable;

  constructor(vocab: Vocab, config: ModelConfig) {
    this.vocab = vocab;
    this.config = config;
    const std = config.initStd ?? DEFAULT_MODEL.initStd!;
    const rng = new Rng(config.seed);
    const v = vocab.size;
    const e = config.embedDim;
    const h = config.hiddenDim;
    const mat = (rows: number, cols: number) =>
      tf.variable(tf.tensor2d(rng.normals(rows * cols, std), [rows, cols]));
    const bias = (cols: number) => tf.variable(tf.zeros([1, cols]));
    const gru = (inputDim: number): GruParams => ({
      wz: mat(inputDim, h), uz: mat(h, h), bz: bias(h),
      wr: mat(inputDim, h), ur: mat(h, h), br: bias(h),
      wn: mat(inputDim, h), un: mat(h, h), bn: bias(h),
    });
    this.emb = mat(v, e);
    this.enc = gru(e);
    this.dec = gru(e);
    this.wa = mat(h, h);
    this.wc = mat(2 * h, h);
    this.bc = bias(h);
    this.wo = mat(h, v);
    this.bo = bias(v);
  }

  variables(): tf.Variable[] {
    const grus = [this.enc, this.dec].flatMap((g) => [
      g.wz, g.uz, g.bz, g.wr, g.ur, g.br, g.wn, g.un, g.bn,
    ]);
    return [this.emb, ...grus, this.wa, this.wc, this.bc, this.wo, this.bo];
  }

  dispose(): void {
    for (const variable of this.variables()) variable.dispose();
  }

  private gruStep(p: GruParams, x: tf.Tensor2D, h: tf.Tensor2D,
                  mask?: tf.Tensor2D): tf.Tensor2D {
    const z = tf.sigmoid(tf.matMul(x, p.wz).add(tf.matMul(h, p.uz)).add(p.bz));
    const r = tf.sigmoid(tf.matMul(x, p.wr).add(tf.matMul(h, p.ur)).add(p.br));
    const n = tf.tanh(tf.matMul(x, p.wn).add(tf.matMul(tf.mul(r, h), p.un)).add(p.bn));
    const next = tf.add(tf.mul(tf.sub(1, z), n), tf.mul(z, h)) as tf.Tensor2D;
    if (!mask) return next;
    // Padded steps keep the previous state so tail padding can't leak in.
    return tf.add(tf.mul(mask, next), tf.mul(tf.sub(1, mask), h)) as tf.Tensor2D;
  }

  /** Encode packed source ids into per-step states and a final state. */
  private encode(src: Packed): { states: tf.Tensor3D; final: tf.Tensor2D } {
    const [batch, srcLen] = src.ids.shape;
    const embedded = tf.gather(this.emb, src.ids) as tf.Tensor3D; // [B,S,E]
    let h = tf.zeros([batch, this.config.hiddenDim]) as tf.Tensor2D;
    const perStep: tf.Tensor2D[] = [];
    for (let s = 0; s < srcLen; s++) {
      const x = embedded.slice([0, s, 0], [batch, 1, -1]).squeeze([1]) as tf.Tensor2D;
      const stepMask = src.mask.slice([0, s], [batch, 1]) as tf.Tensor2D;
      h = this.gruStep(this.enc, x, h, stepMask);
      perStep.push(h);
    }
    const states = tf.stack(perStep, 1) as tf.Tensor3D; // [B,S,H]
    return { states, final: h };
  }

  /** One decoder step: new state plus output logits over the vocabulary. */
  private decodeStep(
    h: tf.Tensor2D,
    inputIds: tf.Tensor2D, // [B,1] int32
    encStates: tf.Tensor3D,
    srcMask: tf.Tensor2D,
  ): { h: tf.Tensor2D; logits: tf.Tensor2D } {
    const x = tf.gather(this.emb, inputIds.squeeze([1])) as tf.Tensor2D;
    const next = this.gruStep(this.dec, x, h);
    const query = tf.matMul(next, this.wa); // [B,H]
    const scores = tf
      .matMul(encStates, query.expandDims(2))
      .squeeze([2])
      .add(tf.mul(tf.sub(srcMask, 1), 1e9)) as tf.Tensor2D; // [B,S]
    const attn = tf.softmax(scores, 1);
    const context = tf.sum(tf.mul(encStates, attn.expandDims(2)), 1) as tf.Tensor2D;
    const combined = tf.tanh(
      tf.matMul(tf.concat([next, context], 1), this.wc).add(this.bc),
    ) as tf.Tensor2D;
    const logits = tf.matMul(combined, this.wo).add(this.bo) as tf.Tensor2D;
    return { h: next, logits };
  }

  /** Teacher-forced log-probabilities of the target tokens: [B, T]. */
  private targetLogProbs(src: Packed, tgtIn: Packed, tgtOut: Packed): tf.Tensor2D {
    const { states, final } = this.encode(src);
    const [batch, tgtLen] = tgtIn.ids.shape;
    let h = final;
    const perStep: tf.Tensor2D[] = [];
    for (let t = 0; t < tgtLen; t++) {
      const inputIds = tgtIn.ids.slice([0, t], [batch, 1]) as tf.Tensor2D;
      const step = this.decodeStep(h, inputIds, states, src.mask);
      h = step.h;
      perStep.push(tf.logSoftmax(step.logits));
    }
    const logProbs = tf.stack(perStep, 1) as tf.Tensor3D; // [B,T,V]
    const picked = tf
      .sum(tf.mul(tf.oneHot(tgtOut.ids, this.vocab.size), logProbs), 2) as tf.Tensor2D;
    return tf.mul(picked, tgtOut.mask) as tf.Tensor2D;
  }

  private packBatch(instances: readonly Instance[]) {
    const srcSeqs = instances.map((i) => this.vocab.encode(tokensOf(i.src)));
    const tgtSeqs = instances.map((i) => this.vocab.encode(tokensOf(i.tgt)));
    const src = pack(srcSeqs, this.vocab.padId);
    const tgtIn = pack(tgtSeqs.map((s) => [this.vocab.bosId, ...s]), this.vocab.padId);
    const tgtOut = pack(tgtSeqs.map((s) => [...s, this.vocab.eosId]), this.vocab.padId);
    return { src, tgtIn, tgtOut };
  }

  /** Summed negative log-likelihood and token count for a batch. */
  batchLoss(instances: readonly Instance[]): { lossSum: number; tokens: number } {
    const out = tf.tidy(() => {
      const { src, tgtIn, tgtOut } = this.packBatch(instances);
      const picked = this.targetLogProbs(src, tgtIn, tgtOut);
      return tf.neg(tf.sum(picked));
    });
    const lossSum = out.dataSync()[0];
    out.dispose();
    const tokens = instances.reduce((n, i) => n + tokensOf(i.tgt).length + 1, 0);
    return { lossSum, tokens };
  }

  /**
   * One gradient step on a batch; returns the pre-update mean loss per
   * target token (end-of-sequence included).
   */
  trainBatch(optimizer: tf.Optimizer, instances: readonly Instance[]): number {
    const tokens = instances.reduce((n, i) => n + tokensOf(i.tgt).length + 1, 0);
    const cost = optimizer.minimize(
      () =>
        tf.tidy(() => {
          const { src, tgtIn, tgtOut } = this.packBatch(instances);
          const picked = this.targetLogProbs(src, tgtIn, tgtOut);
          return tf.div(tf.neg(tf.sum(picked)), tokens) as tf.Scalar;
        }),
      true,
      this.variables(),
    )!;
    const value = cost.dataSync()[0];
    cost.dispose();
    return value;
  }

  /**
   * Teacher-forced per-token log-probs for each instance, one list per
   * instance covering every target token plus the end-of-sequence step.
   */
  scoreTargets(instances: readonly Instance[]): number[][] {
    if (instances.length === 0) return [];
    const { matrix, lengths } = tf.tidy(() => {
      const { src, tgtIn, tgtOut } = this.packBatch(instances);
      const picked = this.targetLogProbs(src, tgtIn, tgtOut);
      return { matrix: picked.arraySync() as number[][], lengths: tgtOut.lengths };
    });
    return matrix.map((row, b) => row.slice(0, lengths[b]).map((lp) => Math.min(lp, 0)));
  }

  /** Greedy argmax decoding until end-of-sequence or MAX_DECODE_LEN. */
  greedyDecode(src: string, maxLen: number = MAX_DECODE_LEN): string {
    const outIds: number[] = [];
    tf.tidy(() => {
      const packed = pack([this.vocab.encode(tokensOf(src))], this.vocab.padId);
      const { states, final } = this.encode(packed);
      let h = final;
      let previous = this.vocab.bosId;
      for (let t = 0; t < maxLen; t++) {
        const inputIds = tf.tensor2d([[previous]], [1, 1], 'int32');
        const step = this.decodeStep(h, inputIds, states, packed.mask);
        h = step.h;
        const next = (step.logits.argMax(1).dataSync() as Int32Array)[0];
        if (next === this.vocab.eosId) break;
        outIds.push(next);
        previous = next;
      }
    });
    return this.vocab.decode(outIds).join(' ');
  }
}
