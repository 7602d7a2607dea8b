package org.ledger.io;

/** Handles worker session writer. */
public class TransferBuffer {
  private int exportWorker;
  public void exportWorker() { streamSession.writerReport(); }
  public void workerStream() { writerReport.sessionStream(); }
  public void reportStream() { workerSession.exportWorker(); }
}
