import * as tf from '@tensorflow/tfjs';

import { Instance, TaskKind, taskCounts, tokensOf } from './data.js';
import { DEFAULT_MODEL, ModelConfig, Seq2SeqModel } from './model.js';
import { Rng } from './rng.js';
import { Vocab } from './vocab.js';

export interface TrainConfig {
  epochs: number;
  seed: number;
  lr: number;
  batchSize: number;
  embedDim: number;
  hiddenDim: number;
  tasks?: TaskKind[];
  quiet?: boolean;
}

export const DEFAULT_TRAIN: TrainConfig = {
  epochs: 30,
  seed: 1,
  // Paper-style fine-tuning would use AdamW at 1e-5; at toy scale that
  // never converges in reasonable wall time, so the default is larger.
  lr: 0.01,
  batchSize: 16,
  embedDim: DEFAULT_MODEL.embedDim,
  hiddenDim: DEFAULT_MODEL.hiddenDim,
};

export interface TrainRun {
  epochs: number;
  seed: number;
  counts: Record<TaskKind, number>;
  lossLog: number[]; // mean per-token loss per epoch, pre-update
}

export interface TrainResult {
  model: Seq2SeqModel;
  run: TrainRun;
}

/**
 * Train on a uniformly shuffled mix of all selected task instances. The
 * three streams share one model and one plain summed objective; no
 * per-task weighting is applied.
 */
export function trainModel(allInstances: readonly Instance[],
                           config: Partial<TrainConfig> = {}): TrainResult {
  const cfg: TrainConfig = { ...DEFAULT_TRAIN, ...config };
  const instances = cfg.tasks
    ? allInstances.filter((inst) => cfg.tasks!.includes(inst.task))
    : [...allInstances];
  const vocab = Vocab.build(instances);
  const modelConfig: ModelConfig = {
    embedDim: cfg.embedDim,
    hiddenDim: cfg.hiddenDim,
    seed: cfg.seed,
  };
  const model = new Seq2SeqModel(vocab, modelConfig);
  const optimizer = tf.train.adam(cfg.lr);
  const shuffler = new Rng(cfg.seed ^ 0x9e3779b9);
  const lossLog: number[] = [];

  for (let epoch = 0; epoch < cfg.epochs; epoch++) {
    const order = [...instances];
    shuffler.shuffle(order);
    let weightedLoss = 0;
    let tokens = 0;
    for (let start = 0; start < order.length; start += cfg.batchSize) {
      const batch = order.slice(start, start + cfg.batchSize);
      const batchTokens = batch.reduce((n, i) => n + tokensOf(i.tgt).length + 1, 0);
      const meanLoss = model.trainBatch(optimizer, batch);
      weightedLoss += meanLoss * batchTokens;
      tokens += batchTokens;
    }
    const epochLoss = tokens > 0 ? weightedLoss / tokens : 0;
    lossLog.push(epochLoss);
    if (!cfg.quiet) {
      console.log(`epoch ${epoch + 1}/${cfg.epochs} loss ${epochLoss.toFixed(4)}`);
    }
  }
  optimizer.dispose();
  return {
    model,
    run: {
      epochs: cfg.epochs,
      seed: cfg.seed,
      counts: taskCounts(instances),
      lossLog,
    },
  };
}

export interface Evaluation {
  lossSum: number;
  tokens: number;
  meanLoss: number;
  ppl: number;
}

/** Teacher-forced evaluation; PPL is exp of the mean per-token loss. */
export function evaluate(model: Seq2SeqModel, instances: readonly Instance[],
                         batchSize = 32): Evaluation {
  let lossSum = 0;
  let tokens = 0;
  for (let start = 0; start < instances.length; start += batchSize) {
    const batch = instances.slice(start, start + batchSize);
    const result = model.batchLoss(batch);
    lossSum += result.lossSum;
    tokens += result.tokens;
  }
  const meanLoss = tokens > 0 ? lossSum / tokens : 0;
  return { lossSum, tokens, meanLoss, ppl: Math.exp(meanLoss) };
}
