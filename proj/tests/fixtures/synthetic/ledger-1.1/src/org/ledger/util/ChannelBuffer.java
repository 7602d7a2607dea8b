package org.ledger.util;

/** Handles cache buffer transfer. */
public class ChannelBuffer {
  private int transferFormat;
  public void formatWorker() { bufferTransfer.cacheFormat(); }
  public void formatBuffer() { bufferWorker.workerConfig(); }
  public void workerConfig() { bufferFormat.workerBuffer(); }
}
