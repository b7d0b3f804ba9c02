/**
 * Trainer CLI.
 *
 *   train   --data train.jsonl --out-dir out [--eval-data dev.jsonl] [...]
 *   decode  --data train.jsonl --src "[GRAPH] ..." [...]
 *   ablate  --train train.jsonl --holdout dev.jsonl --out table.json [...]
 *
 * `train` writes out/loss_log.csv, out/train_run.json and out/logprobs.jsonl
 * (teacher-forced on --eval-data when given, else on the training data); the
 * log-prob file is directly consumable by `graphaug eval --metric ppl`.
 */
import path from 'path';

import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';

import { runAblation } from './ablation.js';
import { DataError, TASK_KINDS, TaskKind, readInstances } from './data.js';
import { exportLogProbs, writeJson, writeLossCsv } from './io.js';
import { DEFAULT_TRAIN, evaluate, trainModel } from './train.js';

function parseTasks(value: string | undefined): TaskKind[] | undefined {
  if (!value) return undefined;
  const tasks = value.split(',').map((t) => t.trim()).filter(Boolean);
  for (const task of tasks) {
    if (!(TASK_KINDS as readonly string[]).includes(task)) {
      throw new DataError(`unknown task ${JSON.stringify(task)}`);
    }
  }
  return tasks as TaskKind[];
}

const trainFlags = {
  epochs: { type: 'number', default: DEFAULT_TRAIN.epochs },
  seed: { type: 'number', default: DEFAULT_TRAIN.seed },
  lr: { type: 'number', default: DEFAULT_TRAIN.lr },
  'batch-size': { type: 'number', default: DEFAULT_TRAIN.batchSize },
  'embed-dim': { type: 'number', default: DEFAULT_TRAIN.embedDim },
  'hidden-dim': { type: 'number', default: DEFAULT_TRAIN.hiddenDim },
  tasks: { type: 'string', describe: 'comma-separated subset of dialogue,graph,ner' },
} as const;

function trainConfigFrom(argv: any) {
  return {
    epochs: argv.epochs,
    seed: argv.seed,
    lr: argv.lr,
    batchSize: argv.batchSize,
    embedDim: argv.embedDim,
    hiddenDim: argv.hiddenDim,
    tasks: parseTasks(argv.tasks),
  };
}

async function main(): Promise<void> {
  await yargs(hideBin(process.argv))
    .command(
      'train',
      'train on a graphaug JSONL file and export logs/log-probs',
      (y) =>
        y.options({
          ...trainFlags,
          data: { type: 'string', demandOption: true },
          'out-dir': { type: 'string', demandOption: true },
          'eval-data': { type: 'string' },
        }),
      (argv) => {
        const instances = readInstances(argv.data as string);
        const tasks = parseTasks(argv.tasks as string | undefined);
        const { model, run } = trainModel(instances, trainConfigFrom(argv));
        const outDir = argv.outDir as string;
        writeLossCsv(run, path.join(outDir, 'loss_log.csv'));
        writeJson(run, path.join(outDir, 'train_run.json'));
        const evalSource = argv.evalData
          ? readInstances(argv.evalData as string)
          : instances;
        const scored = tasks ? evalSource.filter((i) => tasks.includes(i.task)) : evalSource;
        exportLogProbs(model, scored, path.join(outDir, 'logprobs.jsonl'));
        const { ppl, meanLoss } = evaluate(model, scored);
        console.log(JSON.stringify({
          trained: run.counts,
          finalLoss: run.lossLog[run.lossLog.length - 1] ?? null,
          evalMeanLoss: meanLoss,
          evalPpl: ppl,
          outputs: ['loss_log.csv', 'train_run.json', 'logprobs.jsonl'],
        }));
        model.dispose();
      },
    )
    .command(
      'decode',
      'train, then greedy-decode one source sequence',
      (y) =>
        y.options({
          ...trainFlags,
          data: { type: 'string', demandOption: true },
          src: { type: 'string', demandOption: true },
        }),
      (argv) => {
        const instances = readInstances(argv.data as string);
        const { model } = trainModel(instances, trainConfigFrom(argv));
        console.log(model.greedyDecode(argv.src as string));
        model.dispose();
      },
    )
    .command(
      'ablate',
      'train one model per task subset, report held-out dialogue PPL',
      (y) =>
        y.options({
          ...trainFlags,
          train: { type: 'string', demandOption: true },
          holdout: { type: 'string', demandOption: true },
          out: { type: 'string', demandOption: true },
        }),
      (argv) => {
        const trainInstances = readInstances(argv.train as string);
        const holdout = readInstances(argv.holdout as string);
        const table = runAblation(trainInstances, holdout, trainConfigFrom(argv));
        writeJson(table, argv.out as string);
        console.log(JSON.stringify(table));
      },
    )
    .demandCommand(1)
    .strict()
    .fail((msg, err) => {
      console.error(err instanceof DataError ? `trainer: ${err.message}` : msg ?? String(err));
      process.exit(err instanceof DataError ? 2 : 1);
    })
    .parseAsync();
}

main().catch((err) => {
  console.error(err instanceof DataError ? `trainer: ${err.message}` : err);
  process.exit(err instanceof DataError ? 2 : 1);
});
